use crate::fmt_f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// value < limit
    Below,
    /// value <= limit
    AtMost,
    /// value > limit
    Above,
    /// value >= limit
    AtLeast,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Below => "<",
            Relation::AtMost => "<=",
            Relation::Above => ">",
            Relation::AtLeast => ">=",
        }
    }

    pub fn holds(self, value: f64, limit: f64) -> bool {
        match self {
            Relation::Below => value < limit,
            Relation::AtMost => value <= limit,
            Relation::Above => value > limit,
            Relation::AtLeast => value >= limit,
        }
    }
}

/// One measured quantity against its limit.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: String,
    pub id: String,
    /// Acceptance criterion this check belongs to; 0 for module invariants.
    pub criterion: u8,
    pub value: f64,
    pub relation: Relation,
    pub limit: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        // NaN never passes
        self.relation.holds(self.value, self.limit)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub header: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    /// Aligned table for terminals.
    pub fn text(&self) -> String {
        let mut out: String = self.header.iter().map(|h| format!("# {h}\n")).collect();
        let idw = self.checks.iter().map(|c| c.suite.len() + c.id.len() + 1).max().unwrap_or(5).max(5);
        out.push_str(&format!("{:<4} {:<idw$} {:>12} {:>3} {:>10}  {}\n", "crit", "check", "value", "", "limit", "status"));
        for c in &self.checks {
            let crit = if c.criterion == 0 { "-".to_string() } else { c.criterion.to_string() };
            out.push_str(&format!(
                "{:<4} {:<idw$} {:>12.4e} {:>3} {:>10.3e}  {}\n",
                crit,
                format!("{}.{}", c.suite, c.id),
                c.value,
                c.relation.symbol(),
                c.limit,
                if c.passed() { "PASS" } else { "FAIL" }
            ));
        }
        out.push_str(&format!("summary: {}/{} checks passed\n", self.checks.len() - self.failures(), self.checks.len()));
        out
    }

    /// Machine-readable table with full-precision numbers.
    pub fn csv(&self) -> String {
        let mut out: String = self.header.iter().map(|h| format!("# {h}\n")).collect();
        out.push_str("suite,check,criterion,value,relation,limit,status\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.suite,
                c.id,
                c.criterion,
                fmt_f64(c.value),
                c.relation.symbol(),
                fmt_f64(c.limit),
                if c.passed() { "pass" } else { "fail" }
            ));
        }
        out
    }
}
