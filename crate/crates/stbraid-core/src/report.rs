//! Pass/fail reports shared by all suites.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// How an item was established. Ordered from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    /// π-images agree (a necessary condition only, since ker π ≠ 1).
    PiVerified,
    /// A replayed derivation from the defining relations.
    Certified,
    /// Exact arithmetic on matrices, integers or finite sets.
    Exact,
}

impl Tier {
    pub fn name(&self) -> &'static str {
        match self {
            Tier::PiVerified => "pi-verified",
            Tier::Certified => "certified",
            Tier::Exact => "exact",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub name: String,
    pub pass: bool,
    pub tier: Tier,
    pub detail: String,
}

impl Item {
    pub fn new(name: impl Into<String>, pass: bool, tier: Tier) -> Item {
        Item { name: name.into(), pass, tier, detail: String::new() }
    }
    pub fn pi(name: impl Into<String>, pass: bool) -> Item {
        Item::new(name, pass, Tier::Exact)
    }
    pub fn with_detail(mut self, d: impl Into<String>) -> Item {
        self.detail = d.into();
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), items: Vec::new() }
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn extend(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn first_failure(&self) -> Option<&Item> {
        self.items.iter().find(|i| !i.pass)
    }

    pub fn weakest_tier(&self) -> Option<Tier> {
        self.items.iter().map(|i| i.tier).min()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for it in &self.items {
            write!(f, "{} [{}] {}", if it.pass { "pass" } else { "FAIL" }, it.tier, it.name)?;
            if !it.detail.is_empty() {
                write!(f, " -- {}", it.detail)?;
            }
            writeln!(f)?;
        }
        let tier = self.weakest_tier().map(|t| t.name()).unwrap_or("none");
        write!(
            f,
            "{} of {} passed, weakest tier {}",
            self.items.iter().filter(|i| i.pass).count(),
            self.items.len(),
            tier
        )
    }
}
