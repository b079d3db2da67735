use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A concrete grid tuple behind an item's verdict.
///
/// For universal items a witness is a violation. For the existence items
/// (`7a-3-existence`, `8a-3-existence`) witnesses are the tuples that realize
/// the claim, or, when the claim fails, the closest miss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Weights on two opinions as seen from a reference opinion `x_i`
    /// (the sensed expectation for negativity conditions).
    Triple {
        x_i: f64,
        x_j: f64,
        x_d: f64,
        c_j: f64,
        c_d: f64,
        /// Realized distance ratio for existence items.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ratio: Option<f64>,
    },
    /// Two arguments of a scalar map and its values there.
    Pair {
        a: f64,
        b: f64,
        value_a: f64,
        value_b: f64,
    },
    /// `f(x_i)` against the midpoint `(f(x_j) + f(x_d)) / 2`.
    Midpoint {
        x_i: f64,
        x_j: f64,
        x_d: f64,
        f_i: f64,
        midpoint: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemResult {
    pub item: String,
    pub status: Status,
    /// Grid tuples meeting the item's hypothesis.
    pub checked: u64,
    /// Tuples that violate the item (for existence items: tuples that do
    /// not realize it).
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ItemResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// `confirmation`, `negativity`, `theorem1` or `theorem2`.
    pub condition: String,
    pub resolution: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<super::Orientation>,
    pub items: Vec<ItemResult>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(ItemResult::passed)
    }

    pub fn item(&self, id: &str) -> Option<&ItemResult> {
        self.items.iter().find(|r| r.item == id)
    }

    pub fn failing(&self) -> impl Iterator<Item = &ItemResult> {
        self.items.iter().filter(|r| !r.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates one item's counts and the first `cap` witnesses.
pub(crate) struct ItemBuilder {
    item: &'static str,
    cap: usize,
    checked: u64,
    violations: u64,
    witnesses: Vec<Witness>,
}

impl ItemBuilder {
    pub(crate) fn new(item: &'static str, cap: usize) -> Self {
        ItemBuilder {
            item,
            // a failing item always carries at least one witness
            cap: cap.max(1),
            checked: 0,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < self.cap {
                self.witnesses.push(witness());
            }
        }
    }

    pub(crate) fn finish(self) -> ItemResult {
        let witnesses = self.witnesses;
        ItemResult {
            item: self.item.to_string(),
            status: if self.violations == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            checked: self.checked,
            violations: self.violations,
            witnesses,
            note: None,
        }
    }
}
