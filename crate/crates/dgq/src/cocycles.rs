//! Cochain data on a double groupoid and the compatibility conditions that
//! make a deformed box algebra into a weak bialgebra.
//!
//! `SigmaCochain` weights vertical compositions, `TauCochain` horizontal
//! ones; a `ThreeCocycle` on a finite group feeds the vacancy-based builder
//! through [`sigma_from_omega`]. All values are nonzero rationals: roots of
//! unity beyond `±1` are out of scope, which keeps the whole pipeline exact.

use crate::double_groupoid::DoubleGroupoid;
use crate::groupoid::Groupoid;
use crate::rational::{rat_int, Rat};
use crate::report::ValidationReport;
use num::{One, Zero};
use std::collections::HashMap;

/// Weights on vertically composable box pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCochain {
    pub values: HashMap<(u32, u32), Rat>,
}

/// Weights on horizontally composable box pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauCochain {
    pub values: HashMap<(u32, u32), Rat>,
}

impl SigmaCochain {
    pub fn trivial(t: &DoubleGroupoid) -> SigmaCochain {
        let mut values = HashMap::new();
        for a in t.boxes() {
            for b in t.boxes() {
                if t.vcompose(a, b).is_some() {
                    values.insert((a, b), rat_int(1));
                }
            }
        }
        SigmaCochain { values }
    }

    pub fn get(&self, a: u32, b: u32) -> Option<&Rat> {
        self.values.get(&(a, b))
    }
}

impl TauCochain {
    pub fn trivial(t: &DoubleGroupoid) -> TauCochain {
        let mut values = HashMap::new();
        for a in t.boxes() {
            for b in t.boxes() {
                if t.hcompose(a, b).is_some() {
                    values.insert((a, b), rat_int(1));
                }
            }
        }
        TauCochain { values }
    }

    /// Weights taken from a per-point function: the pair weight is the value
    /// at the bottom-left corner of the second factor.
    pub fn from_point_weights(t: &DoubleGroupoid, theta: &[Rat]) -> TauCochain {
        let mut values = HashMap::new();
        for a in t.boxes() {
            for b in t.boxes() {
                if t.hcompose(a, b).is_some() {
                    values.insert((a, b), theta[t.bl(b) as usize].clone());
                }
            }
        }
        TauCochain { values }
    }

    pub fn get(&self, a: u32, b: u32) -> Option<&Rat> {
        self.values.get(&(a, b))
    }
}

/// A normalized 3-cocycle on a finite group (a one-object groupoid).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCocycle {
    pub group: Groupoid,
    pub values: HashMap<(u32, u32, u32), Rat>,
}

impl ThreeCocycle {
    pub fn trivial(group: &Groupoid) -> ThreeCocycle {
        assert!(group.is_group());
        let n = group.n_arrows as u32;
        let mut values = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    values.insert((a, b, c), rat_int(1));
                }
            }
        }
        ThreeCocycle {
            group: group.clone(),
            values,
        }
    }

    /// The sign cocycle on the two-element group: `-1` exactly when all three
    /// arguments are the non-identity element.
    pub fn sign_on_c2(group: &Groupoid) -> ThreeCocycle {
        assert_eq!(group.n_arrows, 2, "sign cocycle lives on the 2-element group");
        let mut c = ThreeCocycle::trivial(group);
        c.values.insert((1, 1, 1), rat_int(-1));
        c
    }

    pub fn get(&self, a: u32, b: u32, c: u32) -> &Rat {
        &self.values[&(a, b, c)]
    }
}

fn check_nonzero_total<K>(values: &HashMap<K, Rat>, rep: &mut ValidationReport)
where
    K: std::fmt::Debug + std::hash::Hash + Eq,
{
    for (k, v) in values {
        if v.is_zero() {
            rep.push("cochain-zero", vec![], format!("value at {k:?} is zero"));
        }
    }
}

/// Vertical 2-cocycle identity plus normalization on identity boxes.
pub fn check_sigma(t: &DoubleGroupoid, sigma: &SigmaCochain) -> ValidationReport {
    let mut rep = ValidationReport::default();
    check_nonzero_total(&sigma.values, &mut rep);
    for a in t.boxes() {
        for b in t.boxes() {
            if t.vcompose(a, b).is_some() && sigma.get(a, b).is_none() {
                rep.push("cochain-domain", vec![a, b], "missing value on a vertical pair");
            }
        }
    }
    if !rep.is_valid() {
        rep.sort();
        return rep;
    }
    for a in t.boxes() {
        let under = t.vid(t.b(a));
        let over = t.vid(t.t(a));
        if !sigma.get(a, under).unwrap().is_one() || !sigma.get(over, a).unwrap().is_one() {
            rep.push("sigma-normalized", vec![a], "weight against an identity box is not 1");
        }
        for b in t.boxes() {
            let ab = match t.vcompose(a, b) {
                Some(c) => c,
                None => continue,
            };
            for c in t.boxes() {
                let bc = match t.vcompose(b, c) {
                    Some(x) => x,
                    None => continue,
                };
                let lhs = sigma.get(a, b).unwrap().clone() * sigma.get(ab, c).unwrap().clone();
                let rhs = sigma.get(b, c).unwrap().clone() * sigma.get(a, bc).unwrap().clone();
                if lhs != rhs {
                    rep.push("sigma-cocycle", vec![a, b, c], format!("{lhs} != {rhs}"));
                }
            }
        }
    }
    rep.sort();
    rep
}

/// Horizontal 2-cocycle identity.
pub fn check_tau(t: &DoubleGroupoid, tau: &TauCochain) -> ValidationReport {
    let mut rep = ValidationReport::default();
    check_nonzero_total(&tau.values, &mut rep);
    for a in t.boxes() {
        for b in t.boxes() {
            if t.hcompose(a, b).is_some() && tau.get(a, b).is_none() {
                rep.push("cochain-domain", vec![a, b], "missing value on a horizontal pair");
            }
        }
    }
    if !rep.is_valid() {
        rep.sort();
        return rep;
    }
    for a in t.boxes() {
        for b in t.boxes() {
            let ab = match t.hcompose(a, b) {
                Some(c) => c,
                None => continue,
            };
            for c in t.boxes() {
                let bc = match t.hcompose(b, c) {
                    Some(x) => x,
                    None => continue,
                };
                let lhs = tau.get(a, b).unwrap().clone() * tau.get(ab, c).unwrap().clone();
                let rhs = tau.get(b, c).unwrap().clone() * tau.get(a, bc).unwrap().clone();
                if lhs != rhs {
                    rep.push("tau-cocycle", vec![a, b, c], format!("{lhs} != {rhs}"));
                }
            }
        }
    }
    rep.sort();
    rep
}

/// Normalization and the 3-cocycle identity, by 4-fold enumeration.
pub fn check_omega(omega: &ThreeCocycle) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let g = &omega.group;
    assert!(g.is_group());
    let n = g.n_arrows as u32;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                match omega.values.get(&(a, b, c)) {
                    None => rep.push("cochain-domain", vec![a, b, c], "missing value"),
                    Some(v) if v.is_zero() => {
                        rep.push("cochain-zero", vec![a, b, c], "zero value")
                    }
                    _ => {}
                }
            }
        }
    }
    if !rep.is_valid() {
        rep.sort();
        return rep;
    }
    let e = g.identity(0);
    for a in 0..n {
        for b in 0..n {
            if !omega.get(e, a, b).is_one()
                || !omega.get(a, e, b).is_one()
                || !omega.get(a, b, e).is_one()
            {
                rep.push("omega-normalized", vec![a, b], "unit argument does not give 1");
            }
        }
    }
    let mul = |x: u32, y: u32| g.compose(x, y).unwrap();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = omega.get(b, c, d).clone()
                        * omega.get(a, mul(b, c), d).clone()
                        * omega.get(a, b, c).clone();
                    let rhs = omega.get(mul(a, b), c, d).clone()
                        * omega.get(a, b, mul(c, d)).clone();
                    if lhs != rhs {
                        rep.push("omega-cocycle", vec![a, b, c, d], format!("{lhs} != {rhs}"));
                    }
                }
            }
        }
    }
    rep.sort();
    rep
}

/// Outcome of the five weak-bialgebra compatibility conditions for a
/// `(sigma, tau)` pair.
#[derive(Clone, Debug, Default)]
pub struct CompatibilityReport {
    pub multiplicative: ValidationReport,
    pub unit_i: ValidationReport,
    pub unit_ii: ValidationReport,
    pub counit_i: ValidationReport,
    pub counit_ii: ValidationReport,
}

impl CompatibilityReport {
    pub fn all_hold(&self) -> bool {
        self.multiplicative.is_valid()
            && self.unit_i.is_valid()
            && self.unit_ii.is_valid()
            && self.counit_i.is_valid()
            && self.counit_ii.is_valid()
    }
}

/// Exhaustively verifies the five conditions tying `sigma` and `tau`
/// together. Both cochains must already pass their cocycle checks.
pub fn check_compatibility(
    t: &DoubleGroupoid,
    sigma: &SigmaCochain,
    tau: &TauCochain,
) -> CompatibilityReport {
    let mut rep = CompatibilityReport::default();
    let sg = |a: u32, b: u32| sigma.get(a, b).unwrap().clone();
    let tu = |a: u32, b: u32| tau.get(a, b).unwrap().clone();

    // product-coproduct exchange over double factorizations
    for a in t.boxes() {
        for b in t.boxes() {
            let ab = match t.vcompose(a, b) {
                Some(c) => c,
                None => continue,
            };
            for &x in t.boxes_with_l(t.l(ab)) {
                let y = match t.hcompose(t.hinv(x), ab) {
                    Some(y) => y,
                    None => continue,
                };
                debug_assert_eq!(t.hcompose(x, y), Some(ab));
                let lhs = sg(a, b) * tu(x, y);
                let mut rhs = Rat::zero();
                for quad in t.double_factorizations(x, y, a, b).expect("precondition holds") {
                    let [u, v, r, s] = quad;
                    rhs += sg(u, r) * sg(v, s) * tu(u, v) * tu(r, s);
                }
                if lhs != rhs {
                    rep.multiplicative.push(
                        "compat-multiplicative",
                        vec![a, b, x, y],
                        format!("{lhs} != {rhs}"),
                    );
                }
            }
        }
    }

    // unit conditions, over triples composing to a vertical identity box
    for a in t.boxes() {
        for b in t.boxes() {
            let ab = match t.hcompose(a, b) {
                Some(c) => c,
                None => continue,
            };
            for c in t.boxes() {
                let abc = match t.hcompose(ab, c) {
                    Some(x) => x,
                    None => continue,
                };
                if !t.is_vid(abc) {
                    continue;
                }
                // unique (U, V) with {U over V} = B, AU and VC identity boxes
                let mut uv = Vec::new();
                let mut wz = Vec::new();
                for &u in t.boxes_with_t(t.t(b)) {
                    let v = match t.vcompose(t.vinv(u), b) {
                        Some(v) => v,
                        None => continue,
                    };
                    if t.vcompose(u, v) != Some(b) {
                        continue;
                    }
                    if t.hcompose(a, u).is_some_and(|x| t.is_vid(x))
                        && t.hcompose(v, c).is_some_and(|x| t.is_vid(x))
                    {
                        uv.push((u, v));
                    }
                    if t.hcompose(a, v).is_some_and(|x| t.is_vid(x))
                        && t.hcompose(u, c).is_some_and(|x| t.is_vid(x))
                    {
                        wz.push((u, v));
                    }
                }
                if uv.len() != 1 {
                    rep.unit_i.push(
                        "compat-unit-i",
                        vec![a, b, c],
                        format!("expected a unique splitting, found {}", uv.len()),
                    );
                } else {
                    let (u, v) = uv[0];
                    let lhs = tu(a, b) * tu(ab, c);
                    let rhs = tu(a, u) * tu(v, c) * sg(u, v);
                    if lhs != rhs {
                        rep.unit_i.push("compat-unit-i", vec![a, b, c], format!("{lhs} != {rhs}"));
                    }
                }
                if wz.len() != 1 {
                    rep.unit_ii.push(
                        "compat-unit-ii",
                        vec![a, b, c],
                        format!("expected a unique splitting, found {}", wz.len()),
                    );
                } else {
                    let (w, z) = wz[0];
                    let lhs = tu(a, b) * tu(ab, c);
                    let rhs = tu(a, z) * tu(w, c) * sg(w, z);
                    if lhs != rhs {
                        rep.unit_ii.push("compat-unit-ii", vec![a, b, c], format!("{lhs} != {rhs}"));
                    }
                }
            }
        }
    }

    // counit conditions, over triples stacking to a horizontal identity box
    for a in t.boxes() {
        for b in t.boxes() {
            let ab = match t.vcompose(a, b) {
                Some(c) => c,
                None => continue,
            };
            for c in t.boxes() {
                let abc = match t.vcompose(ab, c) {
                    Some(x) => x,
                    None => continue,
                };
                if !t.is_hid(abc) {
                    continue;
                }
                let mut uv = Vec::new();
                let mut wz = Vec::new();
                for &u in t.boxes_with_l(t.l(b)) {
                    let v = match t.hcompose(t.hinv(u), b) {
                        Some(v) => v,
                        None => continue,
                    };
                    if t.hcompose(u, v) != Some(b) {
                        continue;
                    }
                    if t.vcompose(a, u).is_some_and(|x| t.is_hid(x))
                        && t.vcompose(v, c).is_some_and(|x| t.is_hid(x))
                    {
                        uv.push((u, v));
                    }
                    if t.vcompose(a, v).is_some_and(|x| t.is_hid(x))
                        && t.vcompose(u, c).is_some_and(|x| t.is_hid(x))
                    {
                        wz.push((u, v));
                    }
                }
                if uv.len() != 1 {
                    rep.counit_i.push(
                        "compat-counit-i",
                        vec![a, b, c],
                        format!("expected a unique splitting, found {}", uv.len()),
                    );
                } else {
                    let (u, v) = uv[0];
                    let au = t.vcompose(a, u).unwrap();
                    let vc = t.vcompose(v, c).unwrap();
                    let lhs = sg(a, b) * sg(ab, c) * tu(au, au) * tu(vc, vc);
                    let rhs = tu(u, v) * sg(a, u) * sg(v, c) * tu(abc, abc);
                    if lhs != rhs {
                        rep.counit_i.push("compat-counit-i", vec![a, b, c], format!("{lhs} != {rhs}"));
                    }
                }
                if wz.len() != 1 {
                    rep.counit_ii.push(
                        "compat-counit-ii",
                        vec![a, b, c],
                        format!("expected a unique splitting, found {}", wz.len()),
                    );
                } else {
                    let (w, z) = wz[0];
                    let az = t.vcompose(a, z).unwrap();
                    let wc = t.vcompose(w, c).unwrap();
                    let lhs = sg(a, b) * sg(ab, c) * tu(az, az) * tu(wc, wc);
                    let rhs = tu(w, z) * sg(a, z) * sg(w, c) * tu(abc, abc);
                    if lhs != rhs {
                        rep.counit_ii.push("compat-counit-ii", vec![a, b, c], format!("{lhs} != {rhs}"));
                    }
                }
            }
        }
    }

    rep
}

/// The vertical 2-cocycle induced on the vacancy-based double groupoid of a
/// group by a normalized 3-cocycle. Boxes must use the canonical layout
/// `(a, b, g) -> ((a·n + b)·n + g)` produced by the matching builder.
///
/// The result passes [`check_sigma`] and the 2x2 product rule
/// `sigma(AB, CD) = sigma(A, C)·sigma(B, D)`; both are re-verified here.
pub fn sigma_from_omega(
    t0: &DoubleGroupoid,
    omega: &ThreeCocycle,
) -> Result<SigmaCochain, String> {
    let rep = check_omega(omega);
    if !rep.is_valid() {
        return Err(format!("invalid 3-cocycle: {rep}"));
    }
    let n = omega.group.n_arrows as u32;
    if t0.n_boxes != (n * n * n) as usize {
        return Err("box count does not match the canonical layout".into());
    }
    let decode = |id: u32| -> (u32, u32, u32) { (id / (n * n), (id / n) % n, id % n) };
    let mut values = HashMap::new();
    for a in t0.boxes() {
        for b in t0.boxes() {
            if t0.vcompose(a, b).is_none() {
                continue;
            }
            let (p, q, g) = decode(a);
            let (_, _, h) = decode(b);
            let v = omega.get(p, g, h).clone() / omega.get(q, g, h).clone();
            values.insert((a, b), v);
        }
    }
    let sigma = SigmaCochain { values };
    let rep = check_sigma(t0, &sigma);
    if !rep.is_valid() {
        return Err(format!("induced weight is not a normalized vertical cocycle: {rep}"));
    }
    for a in t0.boxes() {
        for b in t0.boxes() {
            if t0.hcompose(a, b).is_none() {
                continue;
            }
            for c in t0.boxes() {
                if t0.vcompose(a, c).is_none() {
                    continue;
                }
                for d in t0.boxes() {
                    if t0.hcompose(c, d).is_none() || t0.vcompose(b, d).is_none() {
                        continue;
                    }
                    let ab = t0.hcompose(a, b).unwrap();
                    let cd = t0.hcompose(c, d).unwrap();
                    let lhs = sigma.get(ab, cd).unwrap().clone();
                    let rhs = sigma.get(a, c).unwrap().clone() * sigma.get(b, d).unwrap().clone();
                    if lhs != rhs {
                        return Err(format!(
                            "product rule fails on the grid ({a},{b},{c},{d}): {lhs} != {rhs}"
                        ));
                    }
                }
            }
        }
    }
    Ok(sigma)
}
