use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::ser::{Serialize, SerializeMap, Serializer};

/// Named integer parameters in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Params(pub Vec<(&'static str, i64)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: &'static str, value: impl Into<i64>) -> Self {
        self.0.push((name, value.into()));
        self
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    /// `alpha=2;beta=1`, the CSV cell form.
    pub fn to_cell(&self) -> String {
        let mut out = String::new();
        for (i, (name, value)) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            let _ = write!(out, "{name}={value}");
        }
        out
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, value) in &self.0 {
            map.serialize_entry(name, value)?;
        }
        map.end()
    }
}

/// One checked inequality: `passed` iff `observed` satisfies `claimed`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct VerificationRecord {
    pub theorem: &'static str,
    pub p: u32,
    pub params: Params,
    pub claimed: i64,
    pub observed: i64,
    pub passed: bool,
    pub witness: Option<String>,
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub details: serde_json::Map<String, serde_json::Value>,
}

impl VerificationRecord {
    pub fn new(theorem: &'static str, p: u32, params: Params, claimed: i64, observed: i64, passed: bool) -> Self {
        VerificationRecord {
            theorem,
            p,
            params,
            claimed,
            observed,
            passed,
            witness: None,
            elapsed_ms: None,
            details: serde_json::Map::new(),
        }
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn detail(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.details.insert(key.to_owned(), value.into());
        self
    }

    pub fn sort_key(&self) -> (&'static str, u32, &Params) {
        (self.theorem, self.p, &self.params)
    }
}

pub fn sort_records(records: &mut [VerificationRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| tiebreak(a, b)));
}

fn tiebreak(a: &VerificationRecord, b: &VerificationRecord) -> Ordering {
    (a.claimed, a.observed, &a.witness).cmp(&(b.claimed, b.observed, &b.witness))
}

/// `[2,5]` from any iterator of integers, sorted.
pub fn fmt_set<T: Into<u64>>(values: impl IntoIterator<Item = T>) -> String {
    let mut v: Vec<u64> = values.into_iter().map(Into::into).collect();
    v.sort_unstable();
    let body: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", body.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_formatting_sorts() {
        assert_eq!(fmt_set([5u32, 2]), "[2,5]");
        assert_eq!(fmt_set(Vec::<u32>::new()), "[]");
    }

    #[test]
    fn params_cell_and_lookup() {
        let p = Params::new().with("alpha", 2).with("beta", 1);
        assert_eq!(p.to_cell(), "alpha=2;beta=1");
        assert_eq!(p.get("beta"), Some(1));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"alpha":2,"beta":1}"#);
    }

    #[test]
    fn records_sort_by_theorem_then_p_then_params() {
        let mk = |t, p, a: i64| VerificationRecord::new(t, p, Params::new().with("alpha", a), 0, 0, true);
        let mut v = vec![mk("main", 7, 2), mk("main", 5, 3), mk("corollary", 11, 1), mk("main", 7, 1)];
        sort_records(&mut v);
        let keys: Vec<_> = v.iter().map(|r| (r.theorem, r.p, r.params.get("alpha").unwrap())).collect();
        assert_eq!(keys, [("corollary", 11, 1), ("main", 5, 3), ("main", 7, 1), ("main", 7, 2)]);
    }
}
