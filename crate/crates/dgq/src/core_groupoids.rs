//! The two core groupoids of a double groupoid and the canonical maps into
//! them.
//!
//! `D` consists of the boxes whose left and bottom sides are identities, `E`
//! of those whose right and top sides are. Both carry groupoid structures
//! over the points, with twisted compositions built from 2x2 grids of boxes.
//! The other two corner variants are isomorphic to these via the box
//! inversions and are not materialized.

use crate::double_groupoid::DoubleGroupoid;
use crate::groupoid::Groupoid;
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreSide {
    /// left and bottom sides degenerate
    D,
    /// right and top sides degenerate
    E,
}

/// One of the four canonical surjections onto a core groupoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalMap {
    /// `A -> {A^{-1} over hid(r A)}`, defined when `t(A)` is an identity; lands in D
    Phi,
    /// `A -> vid(b(A)^{-1})·A`, defined when `l(A)` is an identity; lands in D
    Alpha,
    /// `A -> {hid(l A) over A^{-1}}`, defined when `b(A)` is an identity; lands in E
    Psi,
    /// `A -> A·vid(t(A)^{-1})`, defined when `r(A)` is an identity; lands in E
    Beta,
}

/// The four actions of the core groupoids on anchored boxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreAction {
    /// left action of D, anchored at the top-right corner
    DLeft,
    /// right action of D, anchored at the bottom-right corner
    DRight,
    /// right action of E, anchored at the top-left corner
    ERight,
    /// left action of E, anchored at the bottom-left corner
    ELeft,
}

#[derive(Clone, Debug)]
pub struct CoreGroupoid {
    pub side: CoreSide,
    /// sorted box ids of the carrier
    pub members: Vec<u32>,
    /// box id -> index into `members`
    pub member_index: Vec<Option<u32>>,
    /// groupoid over the points, arrows indexed like `members`
    pub as_groupoid: Groupoid,
}

impl CoreGroupoid {
    pub fn contains(&self, a: u32) -> bool {
        self.member_index[a as usize].is_some()
    }

    pub fn arrow_of_box(&self, a: u32) -> Option<u32> {
        self.member_index[a as usize]
    }

    pub fn box_of_arrow(&self, i: u32) -> u32 {
        self.members[i as usize]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Discrete means: only the degenerate boxes of points.
    pub fn is_discrete(&self, t: &DoubleGroupoid) -> bool {
        self.members.len() == t.n_points
            && (0..t.n_points as u32).all(|p| self.contains(t.theta_box(p)))
    }
}

/// 2x2 grid composite: rows first, then the vertical composition.
pub fn grid2(t: &DoubleGroupoid, a: u32, b: u32, c: u32, d: u32) -> Option<u32> {
    let top = t.hcompose(a, b)?;
    let bottom = t.hcompose(c, d)?;
    t.vcompose(top, bottom)
}

pub fn in_core(t: &DoubleGroupoid, side: CoreSide, a: u32) -> bool {
    match side {
        CoreSide::D => t.vert.is_identity(t.l(a)) && t.horiz.is_identity(t.b(a)),
        CoreSide::E => t.vert.is_identity(t.r(a)) && t.horiz.is_identity(t.t(a)),
    }
}

/// Source of a core element over the points.
pub fn core_source(t: &DoubleGroupoid, side: CoreSide, a: u32) -> u32 {
    match side {
        CoreSide::D => t.tr(a),
        CoreSide::E => t.bl(a),
    }
}

/// Target of a core element over the points.
pub fn core_target(t: &DoubleGroupoid, side: CoreSide, a: u32) -> u32 {
    match side {
        CoreSide::D => t.tl(a),
        CoreSide::E => t.br(a),
    }
}

/// Twisted composition of two core elements; `None` when sources do not chain
/// or a grid composite is missing.
pub fn core_compose(t: &DoubleGroupoid, side: CoreSide, first: u32, second: u32) -> Option<u32> {
    if core_target(t, side, first) != core_source(t, side, second) {
        return None;
    }
    match side {
        CoreSide::D => {
            // first = D, second = L: grid [[vid t(L), D], [L, hid r(L)]]
            let (d, l) = (first, second);
            grid2(t, t.vid(t.t(l)), d, l, t.hid(t.r(l)))
        }
        CoreSide::E => {
            // first = M, second = E: grid [[hid l(E), E], [M, vid b(E)]]
            let (m, e) = (first, second);
            grid2(t, t.hid(t.l(e)), e, m, t.vid(t.b(e)))
        }
    }
}

/// Inverse of a core element for the twisted composition.
pub fn core_inverse(t: &DoubleGroupoid, side: CoreSide, a: u32) -> u32 {
    match side {
        CoreSide::D => {
            let step = t
                .hcompose(t.vid(t.horiz.inverse(t.t(a))), a)
                .expect("core inverse: left unit composite must exist");
            t.vinv(step)
        }
        CoreSide::E => {
            let step = t
                .hcompose(a, t.vid(t.horiz.inverse(t.b(a))))
                .expect("core inverse: right unit composite must exist");
            t.vinv(step)
        }
    }
}

/// Builds one core groupoid. The result always passes `validate_groupoid`
/// when the ambient double groupoid is valid.
pub fn build_core(t: &DoubleGroupoid, side: CoreSide) -> CoreGroupoid {
    let members: Vec<u32> = t.boxes().filter(|&a| in_core(t, side, a)).collect();
    let mut member_index = vec![None; t.n_boxes];
    for (i, &a) in members.iter().enumerate() {
        member_index[a as usize] = Some(i as u32);
    }
    let n = members.len();
    let mut triples = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if let Some(c) = core_compose(t, side, a, b) {
                let k = member_index[c as usize].expect("core composition stays in the carrier");
                triples.push((i as u32, j as u32, k));
            }
        }
    }
    let identity: Vec<u32> = (0..t.n_points as u32)
        .map(|p| member_index[t.theta_box(p) as usize].expect("degenerate point boxes lie in both cores"))
        .collect();
    let inverse: Vec<u32> = members
        .iter()
        .map(|&a| member_index[core_inverse(t, side, a) as usize].expect("core inverse stays in the carrier"))
        .collect();
    let source: Vec<u32> = members.iter().map(|&a| core_source(t, side, a)).collect();
    let target: Vec<u32> = members.iter().map(|&a| core_target(t, side, a)).collect();
    let as_groupoid = Groupoid::from_tables(t.n_points, source, target, identity, inverse, &triples);
    debug_assert_eq!(n, as_groupoid.n_arrows);
    CoreGroupoid {
        side,
        members,
        member_index,
        as_groupoid,
    }
}

/// The anti-isomorphism between the two cores; applying it twice returns the
/// argument.
pub fn dagger(t: &DoubleGroupoid, a: u32) -> Result<u32, String> {
    if in_core(t, CoreSide::D, a) {
        t.hcompose(t.hinv(a), t.vid(t.t(a)))
            .ok_or_else(|| format!("dagger composite missing for box {a}"))
    } else if in_core(t, CoreSide::E, a) {
        t.hcompose(t.vid(t.b(a)), t.hinv(a))
            .ok_or_else(|| format!("dagger composite missing for box {a}"))
    } else {
        Err(format!("box {a} lies in neither core groupoid"))
    }
}

/// One of the canonical surjections onto a core.
pub fn canonical_map(t: &DoubleGroupoid, which: CanonicalMap, a: u32) -> Result<u32, String> {
    match which {
        CanonicalMap::Phi => {
            if !t.horiz.is_identity(t.t(a)) {
                return Err(format!("phi needs the top of box {a} to be an identity"));
            }
            t.vcompose(t.tinv(a), t.hid(t.r(a)))
                .ok_or_else(|| format!("phi composite missing for box {a}"))
        }
        CanonicalMap::Alpha => {
            if !t.vert.is_identity(t.l(a)) {
                return Err(format!("alpha needs the left of box {a} to be an identity"));
            }
            t.hcompose(t.vid(t.horiz.inverse(t.b(a))), a)
                .ok_or_else(|| format!("alpha composite missing for box {a}"))
        }
        CanonicalMap::Psi => {
            if !t.horiz.is_identity(t.b(a)) {
                return Err(format!("psi needs the bottom of box {a} to be an identity"));
            }
            t.vcompose(t.hid(t.l(a)), t.tinv(a))
                .ok_or_else(|| format!("psi composite missing for box {a}"))
        }
        CanonicalMap::Beta => {
            if !t.vert.is_identity(t.r(a)) {
                return Err(format!("beta needs the right of box {a} to be an identity"));
            }
            t.hcompose(a, t.vid(t.horiz.inverse(t.t(a))))
                .ok_or_else(|| format!("beta composite missing for box {a}"))
        }
    }
}

/// Anchor point a box must match for each action.
pub fn action_anchor(t: &DoubleGroupoid, which: CoreAction, a: u32) -> u32 {
    match which {
        CoreAction::DLeft => t.tr(a),
        CoreAction::DRight => t.br(a),
        CoreAction::ERight => t.tl(a),
        CoreAction::ELeft => t.bl(a),
    }
}

/// Applies a core element to a box. The anchor condition is:
/// `DLeft`: `tr(A) = e(D)`; `DRight`: `br(A) = s(D)`;
/// `ERight`: `tl(A) = s(E)`; `ELeft`: `bl(A) = e(E)`.
pub fn core_action(
    t: &DoubleGroupoid,
    which: CoreAction,
    actor: u32,
    a: u32,
) -> Result<u32, String> {
    let side = match which {
        CoreAction::DLeft | CoreAction::DRight => CoreSide::D,
        CoreAction::ERight | CoreAction::ELeft => CoreSide::E,
    };
    if !in_core(t, side, actor) {
        return Err(format!("actor {actor} is not in core {side:?}"));
    }
    let anchored = match which {
        CoreAction::DLeft => action_anchor(t, which, a) == core_target(t, side, actor),
        CoreAction::DRight => action_anchor(t, which, a) == core_source(t, side, actor),
        CoreAction::ERight => action_anchor(t, which, a) == core_source(t, side, actor),
        CoreAction::ELeft => action_anchor(t, which, a) == core_target(t, side, actor),
    };
    if !anchored {
        return Err(format!(
            "anchor mismatch: box {a} does not meet core element {actor} for {which:?}"
        ));
    }
    let composite = match which {
        CoreAction::DLeft => grid2(t, t.vid(t.t(a)), actor, a, t.hid(t.r(a))),
        CoreAction::DRight => {
            let twisted = t
                .hcompose(t.vid(t.horiz.inverse(t.t(actor))), actor)
                .ok_or("twisted actor composite missing")?;
            grid2(t, a, t.hid(t.r(a)), t.vid(t.b(a)), twisted)
        }
        CoreAction::ERight => {
            let twisted = t
                .hcompose(actor, t.vid(t.horiz.inverse(t.b(actor))))
                .ok_or("twisted actor composite missing")?;
            grid2(t, twisted, t.vid(t.t(a)), t.hid(t.l(a)), a)
        }
        CoreAction::ELeft => grid2(t, t.hid(t.l(a)), a, actor, t.vid(t.b(a))),
    };
    composite.ok_or_else(|| format!("action composite missing for ({actor}, {a})"))
}

/// Vertical 3-stack `{hid(l A) / E / A^{-1}}`: the action of a box on a core-E
/// element along matching bottoms. Defined when `b(A) = b(E)^{-1}`.
pub fn curve_action(t: &DoubleGroupoid, a: u32, e: u32) -> Result<u32, String> {
    if !in_core(t, CoreSide::E, e) {
        return Err(format!("box {e} is not in core E"));
    }
    if t.b(a) != t.horiz.inverse(t.b(e)) {
        return Err(format!(
            "curve action undefined: bottom of {a} is not inverse to bottom of {e}"
        ));
    }
    t.vcompose(t.hid(t.l(a)), e)
        .and_then(|top| t.vcompose(top, t.tinv(a)))
        .ok_or_else(|| format!("curve composite missing for ({a}, {e})"))
}

/// Boundary morphism from core D into the restricted product of the edge
/// groupoids: `D -> (t(D), r(D))`, with kernel fibers at each point.
pub struct CoreDiagram {
    /// the restricted product groupoid (pairs of a horizontal and a vertical arrow)
    pub codomain: Groupoid,
    /// pairs `(x, g)` indexing the codomain arrows
    pub codomain_pairs: Vec<(u32, u32)>,
    /// core-D arrow index -> codomain arrow index
    pub map: Vec<u32>,
    /// per point: boxes whose four sides are identities of that point
    pub kernel_fibers: Vec<Vec<u32>>,
    pub is_morphism: bool,
    pub injective: bool,
}

pub fn core_diagram(t: &DoubleGroupoid, core_d: &CoreGroupoid) -> CoreDiagram {
    let codomain = crate::groupoid::restricted_product(&t.horiz, &t.vert);
    // mirror the pair enumeration used by restricted_product
    let mut pairs = Vec::new();
    for x in t.horiz.arrows() {
        for g in t.vert.arrows() {
            if t.horiz.source(x) == t.vert.target(g) && t.horiz.target(x) == t.vert.source(g) {
                pairs.push((x, g));
            }
        }
    }
    let pair_index: std::collections::HashMap<(u32, u32), u32> = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    let map: Vec<u32> = core_d
        .members
        .iter()
        .map(|&a| pair_index[&(t.t(a), t.r(a))])
        .collect();
    let g = &core_d.as_groupoid;
    let mut is_morphism = true;
    for f in g.arrows() {
        for h in g.arrows() {
            if let Some(c) = g.compose(f, h) {
                let img = codomain.compose(map[f as usize], map[h as usize]);
                if img != Some(map[c as usize]) {
                    is_morphism = false;
                }
            }
        }
        if codomain.source(map[f as usize]) != g.source(f)
            || codomain.target(map[f as usize]) != g.target(f)
        {
            is_morphism = false;
        }
    }
    let mut seen = std::collections::HashSet::new();
    let injective = map.iter().all(|&v| seen.insert(v));
    let kernel_fibers: Vec<Vec<u32>> = (0..t.n_points as u32)
        .map(|p| {
            t.boxes()
                .filter(|&a| {
                    t.t(a) == t.horiz.identity(p)
                        && t.b(a) == t.horiz.identity(p)
                        && t.l(a) == t.vert.identity(p)
                        && t.r(a) == t.vert.identity(p)
                })
                .collect()
        })
        .collect();
    CoreDiagram {
        codomain,
        codomain_pairs: pairs,
        map,
        kernel_fibers,
        is_morphism,
        injective,
    }
}

/// Checks that an explicit arrow bijection is a groupoid isomorphism.
pub fn is_groupoid_iso(a: &Groupoid, b: &Groupoid, arrow_map: &[u32]) -> bool {
    if a.n_arrows != b.n_arrows || arrow_map.len() != a.n_arrows {
        return false;
    }
    let mut seen = vec![false; b.n_arrows];
    for &im in arrow_map {
        if im as usize >= b.n_arrows || seen[im as usize] {
            return false;
        }
        seen[im as usize] = true;
    }
    for f in a.arrows() {
        for g in a.arrows() {
            let lhs = a.compose(f, g).map(|c| arrow_map[c as usize]);
            let rhs = b.compose(arrow_map[f as usize], arrow_map[g as usize]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Confirms the box-level total inversion is an isomorphism from core D to
/// core E (with sources and targets exchanged accordingly).
pub fn check_inversion_iso(
    t: &DoubleGroupoid,
    core_d: &CoreGroupoid,
    core_e: &CoreGroupoid,
) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if core_d.len() != core_e.len() {
        rep.push("core-inversion", vec![], "core groupoids have different sizes");
        return rep;
    }
    for &d in &core_d.members {
        let e = t.tinv(d);
        if !core_e.contains(e) {
            rep.push("core-inversion", vec![d], "total inverse leaves core E");
            continue;
        }
    }
    for &d1 in &core_d.members {
        for &d2 in &core_d.members {
            let lhs = core_compose(t, CoreSide::D, d1, d2).map(|c| t.tinv(c));
            let rhs = core_compose(t, CoreSide::E, t.tinv(d1), t.tinv(d2));
            if lhs != rhs {
                rep.push(
                    "core-inversion",
                    vec![d1, d2],
                    "total inversion does not intertwine the core compositions",
                );
            }
        }
    }
    rep
}


#[cfg(test)]
mod more_tests {
    use super::*;
    use crate::builders;
    use crate::groupoid::{is_connected, restricted_product};

    #[test]
    fn restricted_product_count_matches_brute_force() {
        for dg in [
            builders::bimodule_dgpd(&builders::cyclic_group(2)),
            builders::bimodule_dgpd(&crate::groupoid::coarse(2)),
            builders::no_siempre(1, 1).0,
        ] {
            let rp = restricted_product(&dg.horiz, &dg.vert);
            let mut brute = 0usize;
            for x in dg.horiz.arrows() {
                for g in dg.vert.arrows() {
                    if dg.horiz.source(x) == dg.vert.target(g)
                        && dg.horiz.target(x) == dg.vert.source(g)
                    {
                        brute += 1;
                    }
                }
            }
            assert_eq!(rp.n_arrows, brute);
            assert!(crate::groupoid::validate_groupoid(&rp).is_valid());
        }
    }

    #[test]
    fn core_e_pairwise_connected_iff_vertical_edge_connected() {
        let (s3, two, _) = builders::s3_fixture();
        for dg in [
            builders::discrete_dgpd(2),
            builders::bimodule_dgpd(&builders::cyclic_group(2)),
            builders::matched_pair_s3(),
            builders::comma(&s3, &two).unwrap(),
            builders::no_siempre(1, 1).0,
        ] {
            let e = build_core(&dg, CoreSide::E);
            let pairwise = e.members.iter().all(|&e1| {
                e.members.iter().all(|&e2| {
                    dg.vert.arrows().any(|g| {
                        dg.vert.source(g) == core_target(&dg, CoreSide::E, e1)
                            && dg.vert.target(g) == core_target(&dg, CoreSide::E, e2)
                    })
                })
            });
            assert_eq!(pairwise, is_connected(&dg.vert));
        }
    }

    #[test]
    fn second_split_lemma_solutions_match_closed_form() {
        // solutions (X, Y) of the mirrored corner configuration with a
        // prescribed box above are generated by the other canonical map
        let dg = builders::bimodule_dgpd(&builders::cyclic_group(2));
        for a in dg.boxes() {
            let mut found = Vec::new();
            for x in dg.boxes() {
                for y in dg.boxes() {
                    let Some(xy) = dg.hcompose(x, y) else { continue };
                    if !dg.is_vid(xy) {
                        continue;
                    }
                    let Some(xa) = dg.vcompose(x, a) else { continue };
                    if !dg.is_hid(xa) {
                        continue;
                    }
                    found.push((x, y));
                }
            }
            if !dg.horiz.is_identity(dg.b(a)) {
                assert!(found.is_empty());
                continue;
            }
            let psi = canonical_map(&dg, CanonicalMap::Psi, a).unwrap();
            let x = dg.hinv(psi);
            let mut expected = Vec::new();
            for y in dg.horiz.arrows() {
                if dg.horiz.source(y) == dg.tl(a) {
                    expected.push((x, dg.hcompose(psi, dg.vid(y)).unwrap()));
                }
            }
            found.sort_unstable();
            expected.sort_unstable();
            assert_eq!(found, expected, "box {a}");
        }
    }
}
