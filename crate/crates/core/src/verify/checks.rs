//! Named checks over a certificate, run in a caller-chosen order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    buchweitz_conca_check, freeness_profile, qh_rank_at_point, rational_singular_points, tjurina_number,
    FreenessVerdict, QhPoint, SQUAREFREE_TRIALS,
};
use crate::error::{Error, Result};
use crate::generator::{CurveCertificate, SegmentTag};
use crate::poly::{int, Scalar};
use crate::syzygy::{curl, g_from_matrix, minors, SyzygyColumn};
use crate::univariate::squarefree_test;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// The linear column annihilates `∇g`.
    Syzygy,
    /// The minors have zero curl.
    Curl,
    /// The matrix reproduces `g` and its minors equal `∇g`.
    Route,
    Squarefree,
    /// The monomials of `g` lie on the certificate's segment.
    Support,
    Freeness,
    Tjurina,
    Qh,
    /// Mixed-partials second column, for `abc` with no zero entry.
    Bc,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Syzygy,
        Check::Curl,
        Check::Route,
        Check::Squarefree,
        Check::Support,
        Check::Freeness,
        Check::Tjurina,
        Check::Qh,
        Check::Bc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Syzygy => "syzygy",
            Check::Curl => "curl",
            Check::Route => "route",
            Check::Squarefree => "squarefree",
            Check::Support => "support",
            Check::Freeness => "freeness",
            Check::Tjurina => "tjurina",
            Check::Qh => "qh",
            Check::Bc => "bc",
        }
    }

    /// Parses a comma-separated list; `"all"` selects every check.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        if s.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let c: Check = part.parse()?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("empty check list".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn pass() -> Self {
        CheckOutcome {
            status: CheckStatus::Pass,
            detail: None,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        CheckOutcome {
            status: CheckStatus::Fail,
            detail: Some(detail.into()),
        }
    }

    fn skip(detail: impl Into<String>) -> Self {
        CheckOutcome {
            status: CheckStatus::Skip,
            detail: Some(detail.into()),
        }
    }

    fn from_bool(ok: bool, detail: &str) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(detail)
        }
    }
}

/// The verdict block of a certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_free: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tjurina: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profile: Vec<[u64; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub qh: Vec<QhPoint>,
    pub checks: BTreeMap<String, CheckOutcome>,
    /// First failing check in the order the checks were run.
    pub first_failure: Option<String>,
}

impl Verdicts {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn freeness(&self) -> Option<FreenessVerdict> {
        Some(FreenessVerdict {
            is_free: self.is_free?,
            exponents: self.exponents,
            tjurina: self.tjurina,
            profile: self.profile.clone(),
            qh: self.qh.clone(),
        })
    }
}

fn run_one(cert: &CurveCertificate, check: Check, v: &mut Verdicts) -> CheckOutcome {
    let g = &cert.g;
    let n = cert.n;
    match check {
        Check::Syzygy => CheckOutcome::from_bool(
            cert.matrix.linear.apply_to_gradient(g).is_zero(),
            "the linear column does not annihilate the gradient",
        ),
        Check::Curl => CheckOutcome::from_bool(
            curl(&minors(&cert.matrix)).is_zero(),
            "the minors have nonzero curl",
        ),
        Check::Route => {
            if g_from_matrix(&cert.matrix) != *g {
                return CheckOutcome::fail("the matrix determinant differs from g");
            }
            match SyzygyColumn::new(g.gradient()) {
                Ok(grad) if grad == minors(&cert.matrix) => CheckOutcome::pass(),
                _ => CheckOutcome::fail("the minors differ from the gradient"),
            }
        }
        Check::Squarefree => match squarefree_test(g, SQUAREFREE_TRIALS) {
            Ok(true) => CheckOutcome::pass(),
            Ok(false) => CheckOutcome::fail("no clean line restriction found"),
            Err(e) => CheckOutcome::fail(e.to_string()),
        },
        Check::Support => match &cert.segment {
            SegmentTag::Segment(h) => match g.support().find(|e| !h.contains(*e)) {
                None => CheckOutcome::pass(),
                Some(e) => CheckOutcome::fail(format!("monomial {e} is off the segment")),
            },
            SegmentTag::Ploski(_) => CheckOutcome::skip("no segment"),
        },
        Check::Freeness => match freeness_profile(g, n + 1) {
            Ok(f) => {
                v.is_free = Some(f.is_free);
                v.exponents = f.exponents;
                v.profile = f.profile;
                CheckOutcome::from_bool(f.is_free, "syzygy dimensions differ from the (1, n-2) profile")
            }
            Err(e) => CheckOutcome::fail(e.to_string()),
        },
        Check::Tjurina => match tjurina_number(g) {
            Ok(t) => {
                v.tjurina = Some(t);
                let want = (n * n - 3 * n + 3) as u64;
                CheckOutcome::from_bool(t == want, &format!("tau = {t}, expected {want}"))
            }
            Err(e) => CheckOutcome::fail(e.to_string()),
        },
        Check::Qh => {
            let pts = rational_singular_points(g, &cert.factors);
            let mut out = Vec::new();
            for p in pts {
                match qh_rank_at_point(&cert.matrix, &p) {
                    Ok((rank, qh)) => out.push(QhPoint { point: p, rank, qh }),
                    Err(e) => return CheckOutcome::fail(e.to_string()),
                }
            }
            // two conics with fourth-order contact meet in an A7 point, which is QH
            let ok = if cert.family.is_ploski() && n >= 5 {
                let origin = [int(1), int(0), int(0)];
                out.iter().any(|q| q.point == origin && !q.qh)
            } else {
                out.iter().all(|q| q.qh)
            };
            v.qh = out;
            CheckOutcome::from_bool(ok, "quasi-homogeneity differs from the family's prediction")
        }
        Check::Bc => match cert.abc {
            Some(abc) if abc.iter().all(|&c| c != 0) => {
                let abc: [Scalar; 3] = abc.map(int);
                match buchweitz_conca_check(g, &abc) {
                    Ok(true) => CheckOutcome::pass(),
                    Ok(false) => CheckOutcome::fail("the mixed-partials column is not a complementary syzygy"),
                    Err(e) => CheckOutcome::fail(e.to_string()),
                }
            }
            _ => CheckOutcome::skip("needs a, b, c all nonzero"),
        },
    }
}

/// Runs `checks` in order and returns the verdict block.
pub fn run_checks(cert: &CurveCertificate, checks: &[Check]) -> Verdicts {
    let mut v = Verdicts::default();
    if let Err(e) = cert.check_invariants() {
        v.checks.insert("invariants".into(), CheckOutcome::fail(e.to_string()));
        v.first_failure = Some("invariants".into());
    }
    for &c in checks {
        let out = run_one(cert, c, &mut v);
        if out.status == CheckStatus::Fail && v.first_failure.is_none() {
            v.first_failure = Some(c.name().into());
        }
        v.checks.insert(c.name().into(), out);
    }
    v
}
