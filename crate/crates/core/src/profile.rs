//! Step functions over set measure `s`.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Which set function a profile was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// `Q_r(A) / (pi(A) pi(A^c))`.
    RConductance,
    /// `max{Psi_r(A), Psi_r(A^c)} / (pi(A) pi(A^c))`.
    RModifiedConductance,
    /// `Q(A, A^c) / min{pi(A), pi(A^c)}`.
    Conductance,
    /// Evolving-set root profile.
    Root,
}

impl ProfileKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileKind::RConductance => "r-conductance",
            ProfileKind::RModifiedConductance => "r-modified-conductance",
            ProfileKind::Conductance => "conductance",
            ProfileKind::Root => "root-profile",
        }
    }

    pub fn uses_r(&self) -> bool {
        matches!(self, ProfileKind::RConductance | ProfileKind::RModifiedConductance)
    }
}

/// One piece of a [`StepProfile`]: `value` holds on `(previous s_hi, s_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub s_hi: f64,
    pub value: f64,
}

/// Piecewise-constant profile on `(0, inf)`.
///
/// `steps` have strictly increasing `s_hi`, the last one at most 1/2; the
/// first step starts at 0. Beyond the last step the profile equals `tail`,
/// which is the value at 1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct StepProfile {
    pub kind: ProfileKind,
    pub r: Option<f64>,
    steps: Vec<Step>,
    tail: f64,
}

impl StepProfile {
    pub fn new(kind: ProfileKind, r: Option<f64>, steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidParameter("profile needs at least one step".into()));
        }
        for w in steps.windows(2) {
            if !(w[0].s_hi < w[1].s_hi) {
                return Err(Error::InvalidParameter("profile breakpoints must increase".into()));
            }
        }
        if !(steps[0].s_hi > 0.0) || steps.last().unwrap().s_hi > 0.5 + 1e-12 {
            return Err(Error::InvalidParameter(
                "profile breakpoints must lie in (0, 1/2]".into(),
            ));
        }
        let tail = steps.last().unwrap().value;
        Ok(Self { kind, r, steps, tail })
    }

    /// Constant profile, mostly useful for tests.
    pub fn constant(kind: ProfileKind, r: Option<f64>, value: f64) -> Self {
        Self {
            kind,
            r,
            steps: vec![Step { s_hi: 0.5, value }],
            tail: value,
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Profile value at `s > 0`.
    pub fn value_at(&self, s: f64) -> f64 {
        self.steps
            .iter()
            .find(|st| s <= st.s_hi)
            .map_or(self.tail, |st| st.value)
    }

    /// Pieces as `(lo, hi, value)` with the tail running to infinity.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let mut lo = 0.0;
        self.steps
            .iter()
            .map(move |st| {
                let piece = (lo, st.s_hi, st.value);
                lo = st.s_hi;
                piece
            })
            .chain(std::iter::once((self.steps.last().unwrap().s_hi, f64::INFINITY, self.tail)))
    }

    pub fn is_non_increasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[1].value <= w[0].value) && self.tail <= self.steps.last().unwrap().value
    }

    /// Tab-separated export: a header naming the quantity and `r`, then one
    /// `s_hi<TAB>value` row per step, ending with the tail at `inf`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let r = self.r.map_or("-".to_string(), |r| r.to_string());
        writeln!(out, "# {} r={}", self.kind.name(), r).unwrap();
        writeln!(out, "s_hi\tvalue").unwrap();
        for st in &self.steps {
            writeln!(out, "{}\t{}", st.s_hi, st.value).unwrap();
        }
        writeln!(out, "inf\t{}", self.tail).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_step() -> StepProfile {
        StepProfile::new(
            ProfileKind::Root,
            None,
            vec![
                Step { s_hi: 0.25, value: 0.8 },
                Step { s_hi: 0.5, value: 0.4 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn value_lookup_and_tail() {
        let p = two_step();
        assert_eq!(p.value_at(0.1), 0.8);
        assert_eq!(p.value_at(0.25), 0.8);
        assert_eq!(p.value_at(0.3), 0.4);
        assert_eq!(p.value_at(7.0), 0.4);
        assert!(p.is_non_increasing());
        let pieces: Vec<_> = p.pieces().collect();
        assert_eq!(pieces.len(), 3);
        assert_eq!(pieces[2].1, f64::INFINITY);
    }

    #[test]
    fn rejects_bad_breakpoints() {
        let bad = StepProfile::new(
            ProfileKind::Root,
            None,
            vec![Step { s_hi: 0.3, value: 1.0 }, Step { s_hi: 0.2, value: 1.0 }],
        );
        assert!(bad.is_err());
        let beyond = StepProfile::new(ProfileKind::Root, None, vec![Step { s_hi: 0.7, value: 1.0 }]);
        assert!(beyond.is_err());
    }

    #[test]
    fn tsv_layout() {
        let tsv = two_step().to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "# root-profile r=-");
        assert_eq!(lines[1], "s_hi\tvalue");
        assert_eq!(lines[2], "0.25\t0.8");
        assert_eq!(lines[4], "inf\t0.4");
    }
}
