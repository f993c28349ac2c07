//! The curl-vanishing conditions as explicit bilinear constraints.
//!
//! Every record reads `L(a,b,c)·coeff + L'(a,b,c)·coupled = 0` where `L`, `L'`
//! are integer linear forms. The `i > 0` family of the third curl component is
//! recorded with its factor `a` kept, so it stays bilinear like the others;
//! the same goes for the interior relation of the four-family system.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Coeff, CoefficientAssignment};
use crate::error::Result;
use crate::grid::build_grids;
use crate::poly::{int, ExponentTriple, Scalar};

/// Which coefficient family the coupled term belongs to, with its linear form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coupled {
    E { name: Coeff, form: [i64; 3] },
    F { name: Coeff, form: [i64; 3] },
}

impl Coupled {
    pub fn name(&self) -> Coeff {
        match self {
            Coupled::E { name, .. } | Coupled::F { name, .. } => *name,
        }
    }

    pub fn form(&self) -> [i64; 3] {
        match self {
            Coupled::E { form, .. } | Coupled::F { form, .. } => *form,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    /// Label of the family, `"E1"`..`"E6"` or `"A1"`..`"A4"`.
    pub family: String,
    /// Grid index of the record.
    pub at: ExponentTriple,
    pub form: [i64; 3],
    pub coeff: Coeff,
    pub coupled: Option<Coupled>,
}

fn apply(form: [i64; 3], abc: &[Scalar; 3]) -> Scalar {
    (0..3).map(|v| &abc[v] * int(form[v])).sum()
}

impl Constraint {
    pub fn evaluate(&self, abc: &[Scalar; 3], values: &BTreeMap<Coeff, Scalar>) -> Scalar {
        let get = |c: Coeff| values.get(&c).cloned().unwrap_or_default();
        let mut v = apply(self.form, abc) * get(self.coeff);
        if let Some(c) = &self.coupled {
            v += apply(c.form(), abc) * get(c.name());
        }
        v
    }

    /// Curl component (0, 1, 2) and monomial whose coefficient equals `sign ·`
    /// this record's value. Only meaningful for the six-family system.
    pub fn curl_source(&self) -> Option<(usize, ExponentTriple, i64)> {
        let sign_idx = match self.family.as_str() {
            "E1" | "E2" => (0, -1),
            "E3" | "E4" => (1, 1),
            "E5" => (2, -1),
            "E6" => (2, 1),
            _ => return None,
        };
        Some((sign_idx.0, self.at, sign_idx.1))
    }
}

fn record(family: &str, at: ExponentTriple, form: [i64; 3], coeff: Coeff, coupled: Option<Coupled>) -> Constraint {
    Constraint {
        family: family.into(),
        at,
        form,
        coeff,
        coupled,
    }
}

/// Records indexed by `T_{n−2}`, one family per curl component and case.
pub fn six_family_system(n: u32) -> Vec<Constraint> {
    let mut out = Vec::new();
    for at in ExponentTriple::all_of_degree(n - 2) {
        let [i, j, k] = at.0;
        let (i1, j1, k1) = (i as i64 + 1, j as i64 + 1, k as i64 + 1);
        let f = Coeff::f(i, j, k);
        if k == 0 {
            out.push(record("E1", at, [i1, j1, 0], f, None));
        } else {
            let e = Coeff::e(i, j + 1, k - 1);
            out.push(record("E2", at, [i1, j1, 0], f, Some(Coupled::E { name: e, form: [0, 0, -j1] })));
        }
        let e = Coeff::e(i, j, k);
        if j == 0 {
            out.push(record("E3", at, [i1, 0, k1], e, None));
        } else {
            let f = Coeff::f(i, j - 1, k + 1);
            out.push(record("E4", at, [i1, 0, k1], e, Some(Coupled::F { name: f, form: [0, -k1, 0] })));
        }
        if i == 0 {
            out.push(record("E5", at, [0, j1, k1], Coeff::d(j, k), None));
        } else {
            let e = Coeff::e(i - 1, j + 1, k);
            let f = Coeff::f(i - 1, j, k + 1);
            out.push(record("E6", at, [j1, 0, 0], e, Some(Coupled::F { name: f, form: [k1, 0, 0] })));
        }
    }
    out
}

/// Records indexed by points of the punctured grid.
pub fn four_family_system(n: u32) -> Result<Vec<Constraint>> {
    let mut out = Vec::new();
    for at in build_grids(n)?.punctured {
        let [i, j, k] = at.0;
        let form = at.as_i64();
        if i > 0 && k > 0 {
            out.push(record("A1", at, form, Coeff::e(i - 1, j, k - 1), None));
        }
        if i > 0 && j > 0 {
            out.push(record("A2", at, form, Coeff::f(i - 1, j - 1, k), None));
        }
        if i == 0 && j > 0 && k > 0 {
            out.push(record("A3", at, form, Coeff::d(j - 1, k - 1), None));
        }
        if i > 0 && j > 0 && k > 0 {
            let f = Coeff::f(i - 1, j - 1, k);
            out.push(record(
                "A4",
                at,
                [j as i64, 0, 0],
                Coeff::e(i - 1, j, k - 1),
                Some(Coupled::F { name: f, form: [k as i64, 0, 0] }),
            ));
        }
    }
    Ok(out)
}

/// `true` if every record vanishes on the assignment.
pub fn satisfies(system: &[Constraint], asg: &CoefficientAssignment) -> bool {
    system
        .iter()
        .all(|c| num_traits::Zero::is_zero(&c.evaluate(&asg.abc, &asg.values)))
}
