//! Constructions of the double-groupoid families used throughout: commuting
//! squares, pair-of-arrows boxes over a groupoid, matched pairs, the vacancy
//! construction twisted by a group 3-cocycle, and the subgroup ("comma")
//! family. Each builder emits a fully validated structure.

use crate::cocycles::{sigma_from_omega, SigmaCochain, ThreeCocycle};
use crate::double_groupoid::{DgpdTables, DoubleGroupoid};
use crate::groupoid::{coarse, coarse_arrow, group_from_table, transformation, Groupoid};
use crate::report::ValidationReport;
use std::collections::HashMap;

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("P{i}")).collect()
}

// --- groups shipped as fixtures ------------------------------------------------

pub fn trivial_group() -> Groupoid {
    group_from_table(&[vec![0]])
}

pub fn cyclic_group(n: usize) -> Groupoid {
    let table: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
        .collect();
    group_from_table(&table)
}

/// All permutations of `0..n` in lexicographic order, composed left to
/// right (`(fg)(i) = g(f(i))`); the identity is element 0.
pub fn symmetric_group(n: usize) -> (Groupoid, Vec<Vec<u8>>) {
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    loop {
        perms.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    let index: HashMap<Vec<u8>, u32> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let table: Vec<Vec<u32>> = perms
        .iter()
        .map(|f| {
            perms
                .iter()
                .map(|g| {
                    let fg: Vec<u8> = (0..n).map(|i| g[f[i] as usize]).collect();
                    index[&fg]
                })
                .collect()
        })
        .collect();
    (group_from_table(&table), perms)
}

/// The 6-element symmetric group together with the ids of its 2-element
/// subgroup generated by the first transposition and its 3-element cyclic
/// subgroup.
pub fn s3_fixture() -> (Groupoid, Vec<u32>, Vec<u32>) {
    let (g, perms) = symmetric_group(3);
    let find = |p: &[u8]| {
        perms
            .iter()
            .position(|q| q.as_slice() == p)
            .expect("permutation present") as u32
    };
    let two = vec![find(&[0, 1, 2]), find(&[1, 0, 2])];
    let three = vec![find(&[0, 1, 2]), find(&[1, 2, 0]), find(&[2, 0, 1])];
    (g, two, three)
}

/// Reindexes a subgroup of a one-object groupoid as its own group; checks
/// closure under product and inverse.
pub fn subgroup(g: &Groupoid, elems: &[u32]) -> Result<(Groupoid, HashMap<u32, u32>), String> {
    assert!(g.is_group());
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.first() != Some(&g.identity(0)) && !sorted.contains(&g.identity(0)) {
        return Err("subgroup must contain the identity".into());
    }
    let index: HashMap<u32, u32> = sorted
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i as u32))
        .collect();
    let mut table = vec![vec![0u32; sorted.len()]; sorted.len()];
    for (i, &a) in sorted.iter().enumerate() {
        if !index.contains_key(&g.inverse(a)) {
            return Err(format!("element {a} has no inverse in the subset"));
        }
        for (j, &b) in sorted.iter().enumerate() {
            let ab = g.compose(a, b).unwrap();
            let Some(&k) = index.get(&ab) else {
                return Err(format!("subset not closed: {a}*{b} escapes"));
            };
            table[i][j] = k;
        }
    }
    Ok((group_from_table(&table), index))
}

// --- discrete ------------------------------------------------------------------

/// Only the degenerate box of each point.
pub fn discrete_dgpd(n_points: usize) -> DoubleGroupoid {
    let h = crate::groupoid::discrete(n_points);
    let v = crate::groupoid::discrete(n_points);
    let ids: Vec<u32> = (0..n_points as u32).collect();
    let tables = DgpdTables {
        n_points,
        point_names: default_names(n_points),
        horiz: h,
        vert: v,
        box_t: ids.clone(),
        box_b: ids.clone(),
        box_l: ids.clone(),
        box_r: ids.clone(),
        hcompose: ids.iter().map(|&i| (i, i, i)).collect(),
        vcompose: ids.iter().map(|&i| (i, i, i)).collect(),
        vid: ids.clone(),
        hid: ids,
    };
    DoubleGroupoid::assemble(tables).expect("discrete structure is valid")
}

// --- commuting squares -----------------------------------------------------------

fn subgroupoid_from_arrows(
    g: &Groupoid,
    arrows: &[u32],
) -> Result<(Groupoid, HashMap<u32, u32>), String> {
    let mut sorted = arrows.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for p in g.objects() {
        if !sorted.contains(&g.identity(p)) {
            return Err(format!("wide subgroupoid must contain the identity of object {p}"));
        }
    }
    let index: HashMap<u32, u32> = sorted
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i as u32))
        .collect();
    for &a in &sorted {
        if !index.contains_key(&g.inverse(a)) {
            return Err(format!("arrow set not closed under inverse at {a}"));
        }
        for &b in &sorted {
            if let Some(c) = g.compose(a, b) {
                if !index.contains_key(&c) {
                    return Err(format!("arrow set not closed under composition at ({a},{b})"));
                }
            }
        }
    }
    let triples: Vec<(u32, u32, u32)> = sorted
        .iter()
        .flat_map(|&a| {
            let index = &index;
            let sorted = &sorted;
            sorted.iter().filter_map(move |&b| {
                g.compose(a, b).map(|c| (index[&a], index[&b], index[&c]))
            })
        })
        .collect();
    let sub = Groupoid::from_tables(
        g.n_objects,
        sorted.iter().map(|&a| g.source(a)).collect(),
        sorted.iter().map(|&a| g.target(a)).collect(),
        (0..g.n_objects as u32).map(|p| index[&g.identity(p)]).collect(),
        sorted.iter().map(|&a| index[&g.inverse(a)]).collect(),
        &triples,
    );
    Ok((sub, index))
}

/// Boxes are the commuting squares of an ambient groupoid whose top/bottom
/// sides lie in one wide subgroupoid and whose left/right sides lie in
/// another: quadruples with `compose(top, right) = compose(left, bottom)`.
pub fn commuting_squares(
    ambient: &Groupoid,
    h_arrows: &[u32],
    v_arrows: &[u32],
) -> Result<DoubleGroupoid, String> {
    let (h, h_index) = subgroupoid_from_arrows(ambient, h_arrows)?;
    let (v, v_index) = subgroupoid_from_arrows(ambient, v_arrows)?;
    let h_list: Vec<u32> = {
        let mut s = h_arrows.to_vec();
        s.sort_unstable();
        s.dedup();
        s
    };
    let v_list: Vec<u32> = {
        let mut s = v_arrows.to_vec();
        s.sort_unstable();
        s.dedup();
        s
    };
    // enumerate boxes: (top, left, right) determine the bottom
    let mut quads = Vec::new();
    let mut quad_index: HashMap<(u32, u32, u32, u32), u32> = HashMap::new();
    for &t in &h_list {
        for &l in &v_list {
            if ambient.source(l) != ambient.source(t) {
                continue;
            }
            for &r in &v_list {
                if ambient.source(r) != ambient.target(t) {
                    continue;
                }
                let tr = ambient.compose(t, r).unwrap();
                let b = ambient.compose(ambient.inverse(l), tr).unwrap();
                if h_index.contains_key(&b) {
                    quad_index.insert((t, l, r, b), quads.len() as u32);
                    quads.push((t, l, r, b));
                }
            }
        }
    }
    let n_boxes = quads.len();
    let mut hcompose = Vec::new();
    let mut vcompose = Vec::new();
    for (i, &(t1, l1, r1, b1)) in quads.iter().enumerate() {
        for (j, &(t2, l2, r2, b2)) in quads.iter().enumerate() {
            if r1 == l2 {
                if let (Some(t), Some(b)) = (ambient.compose(t1, t2), ambient.compose(b1, b2)) {
                    let k = quad_index[&(t, l1, r2, b)];
                    hcompose.push((i as u32, j as u32, k));
                }
            }
            if b1 == t2 {
                if let (Some(l), Some(r)) = (ambient.compose(l1, l2), ambient.compose(r1, r2)) {
                    let k = quad_index[&(t1, l, r, b2)];
                    vcompose.push((i as u32, j as u32, k));
                }
            }
        }
    }
    let vid: Vec<u32> = h_list
        .iter()
        .map(|&x| {
            quad_index[&(
                x,
                ambient.identity(ambient.source(x)),
                ambient.identity(ambient.target(x)),
                x,
            )]
        })
        .collect();
    let hid: Vec<u32> = v_list
        .iter()
        .map(|&g| {
            quad_index[&(
                ambient.identity(ambient.source(g)),
                g,
                g,
                ambient.identity(ambient.target(g)),
            )]
        })
        .collect();
    debug_assert_eq!(n_boxes, quads.len());
    let tables = DgpdTables {
        n_points: ambient.n_objects,
        point_names: default_names(ambient.n_objects),
        horiz: h,
        vert: v,
        box_t: quads.iter().map(|q| h_index[&q.0]).collect(),
        box_b: quads.iter().map(|q| h_index[&q.3]).collect(),
        box_l: quads.iter().map(|q| v_index[&q.1]).collect(),
        box_r: quads.iter().map(|q| v_index[&q.2]).collect(),
        hcompose,
        vcompose,
        vid,
        hid,
    };
    DoubleGroupoid::assemble(tables).map_err(|rep| format!("commuting squares invalid: {rep}"))
}

/// The eigenvalue family: commuting squares in the pair groupoid of a point
/// set with two prescribed partitions for the horizontal and vertical
/// subgroupoids. Returns the structure and the distinguished box whose
/// antipode-square eigenvalue is `m/(n+1)`.
pub fn no_siempre(m: usize, n: usize) -> (DoubleGroupoid, u32) {
    assert!(m >= 1 && n >= 1);
    let total = m + n + 3;
    let ambient = coarse(total);
    // blocks: {P, Q, T_1..T_n} | {R, S_1..S_m} horizontally,
    //         {P, R} | {Q, S_1..S_m, T_1..T_n} vertically
    let mut h_blocks: Vec<Vec<u32>> = vec![vec![0, 1], vec![2]];
    let mut v_blocks: Vec<Vec<u32>> = vec![vec![0, 2], vec![1]];
    for j in 0..m {
        let s = (3 + j) as u32;
        h_blocks[1].push(s);
        v_blocks[1].push(s);
    }
    for i in 0..n {
        let t = (3 + m + i) as u32;
        h_blocks[0].push(t);
        v_blocks[1].push(t);
    }
    let arrows_of = |blocks: &[Vec<u32>]| -> Vec<u32> {
        let mut arrows = Vec::new();
        for block in blocks {
            for &p in block {
                for &q in block {
                    arrows.push(coarse_arrow(total, p, q));
                }
            }
        }
        arrows
    };
    let mut dg = commuting_squares(&ambient, &arrows_of(&h_blocks), &arrows_of(&v_blocks))
        .expect("partition data always yields a valid structure");
    let mut names = vec!["P".to_string(), "Q".to_string(), "R".to_string()];
    for j in 0..m {
        names.push(format!("S{}", j + 1));
    }
    for i in 0..n {
        names.push(format!("T{}", i + 1));
    }
    dg.point_names = names;
    // distinguished box: top (P,Q), left (P,R), right (Q,S1), bottom (R,S1)
    let special = find_box_by_endpoints(&dg, (0, 1), (0, 2), (1, 3), (2, 3));
    (dg, special)
}

/// Locates a box by the endpoint pairs of its four sides; the edge
/// groupoids here embed in a pair groupoid, so endpoints determine arrows.
fn find_box_by_endpoints(
    dg: &DoubleGroupoid,
    t: (u32, u32),
    l: (u32, u32),
    r: (u32, u32),
    b: (u32, u32),
) -> u32 {
    dg.boxes()
        .find(|&a| {
            let th = dg.t(a);
            let bh = dg.b(a);
            let lv = dg.l(a);
            let rv = dg.r(a);
            (dg.horiz.source(th), dg.horiz.target(th)) == t
                && (dg.vert.source(lv), dg.vert.target(lv)) == l
                && (dg.vert.source(rv), dg.vert.target(rv)) == r
                && (dg.horiz.source(bh), dg.horiz.target(bh)) == b
        })
        .expect("distinguished box exists")
}

// --- pair-of-arrows boxes over a groupoid ---------------------------------------

/// Boxes are ordered pairs of arrows of `g`, composing coordinatewise
/// vertically and by middle cancellation horizontally.
pub fn bimodule_dgpd(g: &Groupoid) -> DoubleGroupoid {
    let np = g.n_objects;
    let na = g.n_arrows as u32;
    let h = coarse(np);
    let v = g.clone();
    let box_id = |x: u32, y: u32| x * na + y;
    let n_boxes = (na * na) as usize;
    let mut box_t = Vec::with_capacity(n_boxes);
    let mut box_b = Vec::with_capacity(n_boxes);
    let mut box_l = Vec::with_capacity(n_boxes);
    let mut box_r = Vec::with_capacity(n_boxes);
    for x in 0..na {
        for y in 0..na {
            box_t.push(coarse_arrow(np, g.source(x), g.source(y)));
            box_b.push(coarse_arrow(np, g.target(x), g.target(y)));
            box_l.push(x);
            box_r.push(y);
        }
    }
    let mut hcompose = Vec::new();
    let mut vcompose = Vec::new();
    for x in 0..na {
        for y in 0..na {
            for z in 0..na {
                // (x, y) then (y, z) horizontally
                hcompose.push((box_id(x, y), box_id(y, z), box_id(x, z)));
            }
        }
    }
    for x in 0..na {
        for y in 0..na {
            for x2 in 0..na {
                for y2 in 0..na {
                    if let (Some(xx), Some(yy)) = (g.compose(x, x2), g.compose(y, y2)) {
                        vcompose.push((box_id(x, y), box_id(x2, y2), box_id(xx, yy)));
                    }
                }
            }
        }
    }
    let vid: Vec<u32> = (0..np as u32)
        .flat_map(|p| {
            let g = &g;
            (0..np as u32).map(move |q| box_id(g.identity(p), g.identity(q)))
        })
        .collect();
    let hid: Vec<u32> = (0..na).map(|x| box_id(x, x)).collect();
    let tables = DgpdTables {
        n_points: np,
        point_names: default_names(np),
        horiz: h,
        vert: v,
        box_t,
        box_b,
        box_l,
        box_r,
        hcompose,
        vcompose,
        vid,
        hid,
    };
    DoubleGroupoid::assemble(tables).expect("pair-of-arrows structure is valid")
}

// --- matched pairs ----------------------------------------------------------------

/// Two groupoids over a common base acting on each other. `act_h` sends a
/// meeting pair (horizontal arrow, vertical arrow) to a horizontal arrow,
/// `act_v` to a vertical one. Validity is operational: the assembled
/// structure must pass the double-groupoid axioms.
#[derive(Clone, Debug)]
pub struct MatchedPairData {
    pub horiz: Groupoid,
    pub vert: Groupoid,
    pub act_h: HashMap<(u32, u32), u32>,
    pub act_v: HashMap<(u32, u32), u32>,
}

pub fn matched_pair(data: &MatchedPairData) -> Result<DoubleGroupoid, ValidationReport> {
    let h = &data.horiz;
    let v = &data.vert;
    assert_eq!(h.n_objects, v.n_objects);
    let mut pairs = Vec::new();
    let mut pair_index: HashMap<(u32, u32), u32> = HashMap::new();
    let mut structural = ValidationReport::default();
    for g in v.arrows() {
        for x in h.arrows() {
            if v.source(g) == h.target(x) {
                pair_index.insert((g, x), pairs.len() as u32);
                pairs.push((g, x));
                for (name, table, bound) in [
                    ("horizontal", &data.act_h, h.n_arrows),
                    ("vertical", &data.act_v, v.n_arrows),
                ] {
                    match table.get(&(x, g)) {
                        None => structural.push(
                            "structural",
                            vec![x, g],
                            format!("{name} action table misses pair ({x},{g})"),
                        ),
                        Some(&val) if val as usize >= bound => structural.push(
                            "structural",
                            vec![x, g],
                            format!("{name} action value out of range at ({x},{g})"),
                        ),
                        _ => {}
                    }
                }
            }
        }
    }
    if !structural.is_valid() {
        return Err(structural);
    }
    let act_h = |x: u32, g: u32| -> u32 {
        *data
            .act_h
            .get(&(x, g))
            .unwrap_or_else(|| panic!("action table misses pair ({x},{g})"))
    };
    let act_v = |x: u32, g: u32| -> u32 {
        *data
            .act_v
            .get(&(x, g))
            .unwrap_or_else(|| panic!("action table misses pair ({x},{g})"))
    };
    let mut hcompose = Vec::new();
    let mut vcompose = Vec::new();
    for (i, &(g1, x1)) in pairs.iter().enumerate() {
        for (j, &(g2, x2)) in pairs.iter().enumerate() {
            if let Some(xx) = h.compose(x1, x2) {
                if g1 == act_v(x2, g2) {
                    if let Some(&k) = pair_index.get(&(g2, xx)) {
                        hcompose.push((i as u32, j as u32, k));
                    }
                }
            }
            if let Some(gg) = v.compose(g1, g2) {
                if x2 == act_h(x1, g1) {
                    if let Some(&k) = pair_index.get(&(gg, x1)) {
                        vcompose.push((i as u32, j as u32, k));
                    }
                }
            }
        }
    }
    let tables = DgpdTables {
        n_points: h.n_objects,
        point_names: default_names(h.n_objects),
        horiz: h.clone(),
        vert: v.clone(),
        box_t: pairs.iter().map(|&(_, x)| x).collect(),
        box_b: pairs.iter().map(|&(g, x)| act_h(x, g)).collect(),
        box_l: pairs.iter().map(|&(g, x)| act_v(x, g)).collect(),
        box_r: pairs.iter().map(|&(g, _)| g).collect(),
        hcompose,
        vcompose,
        vid: h
            .arrows()
            .map(|x| pair_index[&(v.identity(h.target(x)), x)])
            .collect(),
        hid: v
            .arrows()
            .map(|g| pair_index[&(g, h.identity(v.source(g)))])
            .collect(),
    };
    DoubleGroupoid::assemble(tables)
}

/// Builds matched-pair actions from an exact factorization of a group:
/// every element must factor uniquely as (element of `v_elems`) times
/// (element of `h_elems`).
pub fn matched_pair_from_group_factorization(
    g: &Groupoid,
    h_elems: &[u32],
    v_elems: &[u32],
) -> Result<MatchedPairData, String> {
    assert!(g.is_group());
    let (h, h_index) = subgroup(g, h_elems)?;
    let (v, v_index) = subgroup(g, v_elems)?;
    if h.n_arrows * v.n_arrows != g.n_arrows {
        return Err("orders do not multiply to the group order".into());
    }
    let mut h_sorted: Vec<u32> = h_index.keys().copied().collect();
    h_sorted.sort_unstable();
    let mut v_sorted: Vec<u32> = v_index.keys().copied().collect();
    v_sorted.sort_unstable();
    // factorization table p = v * h
    let mut factor: HashMap<u32, (u32, u32)> = HashMap::new();
    for &vv in &v_sorted {
        for &hh in &h_sorted {
            let p = g.compose(vv, hh).unwrap();
            if factor.insert(p, (vv, hh)).is_some() {
                return Err(format!("element {p} factors twice; not exact"));
            }
        }
    }
    if factor.len() != g.n_arrows {
        return Err("factorization does not cover the group".into());
    }
    let mut act_h = HashMap::new();
    let mut act_v = HashMap::new();
    for &x in &h_sorted {
        for &gv in &v_sorted {
            let p = g.compose(x, gv).unwrap();
            let (v_part, h_part) = factor[&p];
            act_v.insert((h_index[&x], v_index[&gv]), v_index[&v_part]);
            act_h.insert((h_index[&x], v_index[&gv]), h_index[&h_part]);
        }
    }
    Ok(MatchedPairData {
        horiz: h,
        vert: v,
        act_h,
        act_v,
    })
}

/// The 6-box vacant structure from the exact factorization of the
/// 6-element symmetric group into its cyclic subgroups.
pub fn matched_pair_s3() -> DoubleGroupoid {
    let (g, two, three) = s3_fixture();
    let data = matched_pair_from_group_factorization(&g, &three, &two)
        .expect("exact factorization");
    matched_pair(&data).expect("matched pair is valid")
}

// --- vacancy construction twisted by a 3-cocycle ----------------------------------

/// The vacant structure on triples `(a, b, g)` of group elements, together
/// with the vertical 2-cocycle induced by a normalized 3-cocycle.
pub fn vec_g_omega(
    group: &Groupoid,
    omega: &ThreeCocycle,
) -> Result<(DoubleGroupoid, SigmaCochain), String> {
    assert!(group.is_group());
    let n = group.n_arrows as u32;
    let np = n as usize;
    let h = coarse(np);
    let act: Vec<Vec<u32>> = (0..np)
        .map(|x| {
            (0..n)
                .map(|gg| group.compose(x as u32, gg).unwrap())
                .collect()
        })
        .collect();
    let v = transformation(np, group, &act).expect("regular action is valid");
    let mul = |a: u32, b: u32| group.compose(a, b).unwrap();
    let box_id = |a: u32, b: u32, gg: u32| (a * n + b) * n + gg;
    let n_boxes = (n * n * n) as usize;
    let mut box_t = Vec::with_capacity(n_boxes);
    let mut box_b = Vec::with_capacity(n_boxes);
    let mut box_l = Vec::with_capacity(n_boxes);
    let mut box_r = Vec::with_capacity(n_boxes);
    for a in 0..n {
        for b in 0..n {
            for gg in 0..n {
                box_t.push(coarse_arrow(np, a, b));
                box_b.push(coarse_arrow(np, mul(a, gg), mul(b, gg)));
                box_l.push(a * n + gg);
                box_r.push(b * n + gg);
            }
        }
    }
    let mut hcompose = Vec::new();
    let mut vcompose = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for gg in 0..n {
                for c in 0..n {
                    hcompose.push((box_id(a, b, gg), box_id(b, c, gg), box_id(a, c, gg)));
                }
                for hh in 0..n {
                    vcompose.push((
                        box_id(a, b, gg),
                        box_id(mul(a, gg), mul(b, gg), hh),
                        box_id(a, b, mul(gg, hh)),
                    ));
                }
            }
        }
    }
    let e = group.identity(0);
    let vid: Vec<u32> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a * n + b) * n + e))
        .collect();
    let hid: Vec<u32> = (0..n)
        .flat_map(|a| (0..n).map(move |gg| (a * n + a) * n + gg))
        .collect();
    let tables = DgpdTables {
        n_points: np,
        point_names: default_names(np),
        horiz: h,
        vert: v,
        box_t,
        box_b,
        box_l,
        box_r,
        hcompose,
        vcompose,
        vid,
        hid,
    };
    let dg = DoubleGroupoid::assemble(tables)
        .map_err(|rep| format!("vacancy construction invalid: {rep}"))?;
    let sigma = sigma_from_omega(&dg, omega)?;
    Ok((dg, sigma))
}

// --- subgroup ("comma") construction ----------------------------------------------

/// Boxes `(x, y, g)` with `x, y` in the subgroup and `g` in the group; the
/// bottom side is `x^{-1} g y`. One base point; horizontal arrows form the
/// group, vertical arrows the subgroup.
pub fn comma(g: &Groupoid, f_elems: &[u32]) -> Result<DoubleGroupoid, String> {
    assert!(g.is_group());
    let (f, f_index) = subgroup(g, f_elems)?;
    let mut f_sorted: Vec<u32> = f_index.keys().copied().collect();
    f_sorted.sort_unstable();
    let nf = f.n_arrows as u32;
    let ng = g.n_arrows as u32;
    let mul = |a: u32, b: u32| g.compose(a, b).unwrap();
    let bottom = |x: u32, y: u32, gg: u32| mul(mul(g.inverse(f_sorted[x as usize]), gg), f_sorted[y as usize]);
    let box_id = |x: u32, y: u32, gg: u32| (x * nf + y) * ng + gg;
    let n_boxes = (nf * nf * ng) as usize;
    let mut box_t = Vec::with_capacity(n_boxes);
    let mut box_b = Vec::with_capacity(n_boxes);
    let mut box_l = Vec::with_capacity(n_boxes);
    let mut box_r = Vec::with_capacity(n_boxes);
    for x in 0..nf {
        for y in 0..nf {
            for gg in 0..ng {
                box_t.push(gg);
                box_b.push(bottom(x, y, gg));
                box_l.push(x);
                box_r.push(y);
            }
        }
    }
    let mut hcompose = Vec::new();
    let mut vcompose = Vec::new();
    for x in 0..nf {
        for y in 0..nf {
            for gg in 0..ng {
                let a = box_id(x, y, gg);
                for z in 0..nf {
                    for g2 in 0..ng {
                        hcompose.push((a, box_id(y, z, g2), box_id(x, z, mul(gg, g2))));
                    }
                }
                for x2 in 0..nf {
                    for y2 in 0..nf {
                        let b = box_id(x2, y2, bottom(x, y, gg));
                        let xx = f.compose(x, x2).unwrap();
                        let yy = f.compose(y, y2).unwrap();
                        vcompose.push((a, b, box_id(xx, yy, gg)));
                    }
                }
            }
        }
    }
    let e_f = f.identity(0);
    let e_g = g.identity(0);
    let vid: Vec<u32> = (0..ng).map(|gg| box_id(e_f, e_f, gg)).collect();
    let hid: Vec<u32> = (0..nf).map(|x| box_id(x, x, e_g)).collect();
    let tables = DgpdTables {
        n_points: 1,
        point_names: vec!["*".to_string()],
        horiz: g.clone(),
        vert: f,
        box_t,
        box_b,
        box_l,
        box_r,
        hcompose,
        vcompose,
        vid,
        hid,
    };
    DoubleGroupoid::assemble(tables).map_err(|rep| format!("comma construction invalid: {rep}"))
}

// --- identity-union fixture ---------------------------------------------------------

/// Only the identity boxes of both edge groupoids, glued along the
/// degenerate point boxes. Valid, but fails the filling condition as soon
/// as a non-identity vertical arrow meets a non-identity horizontal one.
pub fn identity_union(h: &Groupoid, v: &Groupoid) -> DoubleGroupoid {
    assert_eq!(h.n_objects, v.n_objects);
    let nh = h.n_arrows as u32;
    // boxes: one per horizontal arrow, then one per non-identity vertical arrow
    let v_extra: Vec<u32> = v.arrows().filter(|&g| !v.is_identity(g)).collect();
    let v_rank: HashMap<u32, u32> = v_extra
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, nh + i as u32))
        .collect();
    let hid_of = |g: u32| -> u32 {
        if v.is_identity(g) {
            h.identity(v.source(g))
        } else {
            v_rank[&g]
        }
    };
    let n_boxes = nh as usize + v_extra.len();
    let mut box_t = vec![0u32; n_boxes];
    let mut box_b = vec![0u32; n_boxes];
    let mut box_l = vec![0u32; n_boxes];
    let mut box_r = vec![0u32; n_boxes];
    for x in 0..nh {
        box_t[x as usize] = x;
        box_b[x as usize] = x;
        box_l[x as usize] = v.identity(h.source(x));
        box_r[x as usize] = v.identity(h.target(x));
    }
    for (i, &g) in v_extra.iter().enumerate() {
        let idx = nh as usize + i;
        box_t[idx] = h.identity(v.source(g));
        box_b[idx] = h.identity(v.target(g));
        box_l[idx] = g;
        box_r[idx] = g;
    }
    let is_vbox = |a: u32| a < nh;
    let mut hcompose = Vec::new();
    let mut vcompose = Vec::new();
    for a in 0..n_boxes as u32 {
        for b in 0..n_boxes as u32 {
            match (is_vbox(a), is_vbox(b)) {
                (true, true) => {
                    if let Some(xy) = h.compose(a, b) {
                        hcompose.push((a, b, xy));
                    }
                    if a == b {
                        vcompose.push((a, b, a));
                    }
                }
                (false, false) => {
                    let (g1, g2) = (v_extra[(a - nh) as usize], v_extra[(b - nh) as usize]);
                    if g1 == g2 {
                        hcompose.push((a, b, a));
                    }
                    if let Some(gg) = v.compose(g1, g2) {
                        vcompose.push((a, b, hid_of(gg)));
                    }
                }
                (true, false) => {
                    let g2 = v_extra[(b - nh) as usize];
                    if a == h.identity(v.source(g2)) {
                        vcompose.push((a, b, b));
                    }
                }
                (false, true) => {
                    let g1 = v_extra[(a - nh) as usize];
                    if b == h.identity(v.target(g1)) {
                        vcompose.push((a, b, a));
                    }
                }
            }
        }
    }
    let vid: Vec<u32> = (0..nh).collect();
    let hid: Vec<u32> = v.arrows().map(hid_of).collect();
    let tables = DgpdTables {
        n_points: h.n_objects,
        point_names: default_names(h.n_objects),
        horiz: h.clone(),
        vert: v.clone(),
        box_t,
        box_b,
        box_l,
        box_r,
        hcompose,
        vcompose,
        vid,
        hid,
    };
    DoubleGroupoid::assemble(tables).expect("identity union is valid")
}
