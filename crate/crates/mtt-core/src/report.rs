//! Verification reports: both sides of an identity in canonical text, an
//! equality flag, and diagnostics.

use serde::{Deserialize, Serialize};

use crate::algebra::{render_element, Polynomial};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub lhs_millis: u64,
    pub rhs_millis: u64,
    /// First differing monomials, rendered, when the sides disagree.
    pub counterexamples: Vec<String>,
}

impl VerificationReport {
    pub fn from_polynomials(
        theorem: &str,
        instance: String,
        lhs: &Polynomial,
        rhs: &Polynomial,
        name: &dyn Fn(u32) -> String,
        lhs_millis: u64,
        rhs_millis: u64,
    ) -> Self {
        let equal = lhs == rhs;
        let mut counterexamples = Vec::new();
        if !equal {
            let diff = lhs.sub(rhs);
            if let Ok(diff) = diff {
                for (m, c) in diff.terms.iter().take(5) {
                    let mono: Vec<String> = m
                        .0
                        .iter()
                        .map(|&(v, e)| {
                            if e == 1 {
                                name(v)
                            } else {
                                format!("{}^{}", name(v), e)
                            }
                        })
                        .collect();
                    counterexamples.push(format!(
                        "({})·{}",
                        render_element(c),
                        if mono.is_empty() {
                            "1".to_string()
                        } else {
                            mono.join("·")
                        }
                    ));
                }
            } else {
                counterexamples.push("sides live in different rings".to_string());
            }
        }
        VerificationReport {
            theorem: theorem.to_string(),
            instance,
            lhs: lhs.render(name),
            rhs: rhs.render(name),
            equal,
            lhs_terms: lhs.num_terms(),
            rhs_terms: rhs.num_terms(),
            lhs_millis,
            rhs_millis,
            counterexamples,
        }
    }

    /// Human-diffable text. Timings are excluded unless requested so that
    /// identical inputs produce byte-identical output.
    pub fn render_text(&self, with_timings: bool) -> String {
        let mut out = String::new();
        let status = if self.equal { "VERIFIED" } else { "MISMATCH" };
        out.push_str(&format!("[{}] theorem={}\n", status, self.theorem));
        out.push_str(&format!("  instance: {}\n", self.instance));
        out.push_str(&format!(
            "  lhs ({} terms): {}\n",
            self.lhs_terms, self.lhs
        ));
        out.push_str(&format!(
            "  rhs ({} terms): {}\n",
            self.rhs_terms, self.rhs
        ));
        if with_timings {
            out.push_str(&format!(
                "  elapsed: lhs {} ms, rhs {} ms\n",
                self.lhs_millis, self.rhs_millis
            ));
        }
        for c in &self.counterexamples {
            out.push_str(&format!("  differing monomial: {}\n", c));
        }
        out
    }

    /// Machine-parseable rendering; `parse_structured` round-trips it.
    pub fn render_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn parse_structured(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Polynomial, Ring};

    #[test]
    fn text_and_round_trip() {
        let r = Ring::Rational;
        let a = Polynomial::var(r.clone(), 0);
        let b = Polynomial::var(r.clone(), 1);
        let name = |v: u32| format!("x{}", v);
        let eq = VerificationReport::from_polynomials("t", "i".into(), &a, &a, &name, 1, 2);
        assert!(eq.equal);
        assert!(eq.render_text(false).contains("VERIFIED"));
        assert!(!eq.render_text(false).contains("elapsed"));
        let ne = VerificationReport::from_polynomials("t", "i".into(), &a, &b, &name, 0, 0);
        assert!(!ne.equal);
        assert!(ne.render_text(false).contains("differing monomial"));
        let rt = VerificationReport::parse_structured(&ne.render_structured()).unwrap();
        assert_eq!(rt, ne);
    }
}
