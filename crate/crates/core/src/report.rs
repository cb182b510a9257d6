use serde::Serialize;

/// One named check with its expected and observed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

/// A list of checks produced by one verification routine.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString, ok: bool) {
        self.checks.push(Check { name: name.into(), expected: expected.to_string(), actual: actual.to_string(), ok });
    }

    /// Records an equality check.
    pub fn expect_eq<T: PartialEq + ToString>(&mut self, name: impl Into<String>, expected: T, actual: T) {
        let ok = expected == actual;
        self.push(name, expected, actual, ok);
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}
