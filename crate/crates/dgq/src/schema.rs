//! The JSON document format for double groupoids and their deformation data.
//!
//! A document carries the raw combinatorial tables: points, the two kinds of
//! edge arrows with their endpoints, boxes with their four sides, and the
//! two box composition tables as triples. Edge compositions, identity boxes
//! and inverses are not stored; they are derived on load (identity boxes are
//! detected from the composition tables, and edge composition is read off
//! the composites of identity boxes). Optional maps attach point weights or
//! cochain values, with every rational serialized as a `"p/q"` string.

use crate::double_groupoid::{DgpdTables, DoubleGroupoid};
use crate::groupoid::Groupoid;
use crate::rational::{parse_rat, show_rat, Rat};
use crate::report::ValidationReport;
use crate::wha::ThetaWeights;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HArrowDoc {
    pub id: u32,
    pub l: u32,
    pub r: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VArrowDoc {
    pub id: u32,
    pub t: u32,
    pub b: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoxDoc {
    pub id: u32,
    pub t: u32,
    pub b: u32,
    pub l: u32,
    pub r: u32,
}

/// The on-disk document. Ids must equal positions in their arrays.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct DgpdDocument {
    pub points: Vec<String>,
    pub h_arrows: Vec<HArrowDoc>,
    pub v_arrows: Vec<VArrowDoc>,
    pub boxes: Vec<BoxDoc>,
    pub hcompose: Vec<(u32, u32, u32)>,
    pub vcompose: Vec<(u32, u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<BTreeMap<String, String>>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("json parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document is structurally broken:\n{0}")]
    Structure(ValidationReport),
    #[error("bad rational: {0}")]
    Rational(String),
}

/// On-disk form of a plain groupoid (used for core-groupoid exports and
/// standalone groupoid data). Identities and inverses are derived on load.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowDoc {
    pub id: u32,
    pub source: u32,
    pub target: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupoidDocument {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub compose: Vec<(u32, u32, u32)>,
}

pub fn groupoid_document(g: &Groupoid, object_names: &[String]) -> GroupoidDocument {
    assert_eq!(object_names.len(), g.n_objects);
    let mut compose = Vec::new();
    for f in g.arrows() {
        for h in g.arrows() {
            if let Some(c) = g.compose(f, h) {
                compose.push((f, h, c));
            }
        }
    }
    GroupoidDocument {
        objects: object_names.to_vec(),
        arrows: g
            .arrows()
            .map(|f| ArrowDoc {
                id: f,
                source: g.source(f),
                target: g.target(f),
            })
            .collect(),
        compose,
    }
}

pub fn groupoid_from_document(doc: &GroupoidDocument) -> Result<Groupoid, LoadError> {
    let mut rep = ValidationReport::default();
    let n = doc.arrows.len();
    let np = doc.objects.len();
    for (i, a) in doc.arrows.iter().enumerate() {
        if a.id as usize != i {
            rep.push("structural", vec![a.id], "arrow ids must be dense");
        }
        if a.source as usize >= np || a.target as usize >= np {
            rep.push("structural", vec![a.id], "arrow endpoint out of range");
        }
    }
    let mut table = vec![u32::MAX; n * n];
    for &(f, g, h) in &doc.compose {
        if f as usize >= n || g as usize >= n || h as usize >= n {
            rep.push("structural", vec![f, g, h], "composition triple out of range");
            continue;
        }
        table[f as usize * n + g as usize] = h;
    }
    if !rep.is_valid() {
        return Err(LoadError::Structure(rep));
    }
    let source: Vec<u32> = doc.arrows.iter().map(|a| a.source).collect();
    let target: Vec<u32> = doc.arrows.iter().map(|a| a.target).collect();
    let compose = |f: u32, g: u32| {
        let c = table[f as usize * n + g as usize];
        (c != u32::MAX).then_some(c)
    };
    let parts = derive_edge_parts(np, &source, &target, &compose, "groupoid", &mut rep);
    let Some(parts) = parts else {
        return Err(LoadError::Structure(rep));
    };
    Ok(Groupoid::from_tables(
        np,
        source,
        target,
        parts.identity,
        parts.inverse,
        &parts.compose,
    ))
}

/// Serializes a structure (with optional attached data) deterministically.
pub fn document_of(
    t: &DoubleGroupoid,
    theta: Option<&ThetaWeights>,
    sigma: Option<&BTreeMap<(u32, u32), Rat>>,
    tau: Option<&BTreeMap<(u32, u32), Rat>>,
    omega: Option<&BTreeMap<(u32, u32, u32), Rat>>,
) -> DgpdDocument {
    let mut hcompose = t.hcompose_triples();
    hcompose.sort_unstable();
    let mut vcompose = t.vcompose_triples();
    vcompose.sort_unstable();
    DgpdDocument {
        points: t.point_names.clone(),
        h_arrows: t
            .horiz
            .arrows()
            .map(|x| HArrowDoc {
                id: x,
                l: t.horiz.source(x),
                r: t.horiz.target(x),
            })
            .collect(),
        v_arrows: t
            .vert
            .arrows()
            .map(|g| VArrowDoc {
                id: g,
                t: t.vert.source(g),
                b: t.vert.target(g),
            })
            .collect(),
        boxes: t
            .boxes()
            .map(|a| BoxDoc {
                id: a,
                t: t.t(a),
                b: t.b(a),
                l: t.l(a),
                r: t.r(a),
            })
            .collect(),
        hcompose,
        vcompose,
        theta: theta.map(|th| {
            th.values
                .iter()
                .enumerate()
                .map(|(p, v)| (p.to_string(), show_rat(v)))
                .collect()
        }),
        sigma: sigma.map(|m| {
            m.iter()
                .map(|(&(a, b), v)| (format!("{a},{b}"), show_rat(v)))
                .collect()
        }),
        tau: tau.map(|m| {
            m.iter()
                .map(|(&(a, b), v)| (format!("{a},{b}"), show_rat(v)))
                .collect()
        }),
        omega: omega.map(|m| {
            m.iter()
                .map(|(&(a, b, c), v)| (format!("{a},{b},{c}"), show_rat(v)))
                .collect()
        }),
    }
}

pub fn to_json(doc: &DgpdDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn parse_pair_map(
    m: &BTreeMap<String, String>,
) -> Result<BTreeMap<(u32, u32), Rat>, LoadError> {
    let mut out = BTreeMap::new();
    for (k, v) in m {
        let parts: Vec<&str> = k.split(',').collect();
        if parts.len() != 2 {
            return Err(LoadError::Rational(format!("bad pair key {k:?}")));
        }
        let a: u32 = parts[0].trim().parse().map_err(|_| LoadError::Rational(format!("bad id in {k:?}")))?;
        let b: u32 = parts[1].trim().parse().map_err(|_| LoadError::Rational(format!("bad id in {k:?}")))?;
        out.insert((a, b), parse_rat(v).map_err(LoadError::Rational)?);
    }
    Ok(out)
}

pub fn parse_triple_map(
    m: &BTreeMap<String, String>,
) -> Result<BTreeMap<(u32, u32, u32), Rat>, LoadError> {
    let mut out = BTreeMap::new();
    for (k, v) in m {
        let parts: Vec<&str> = k.split(',').collect();
        if parts.len() != 3 {
            return Err(LoadError::Rational(format!("bad triple key {k:?}")));
        }
        let ids: Vec<u32> = parts
            .iter()
            .map(|p| p.trim().parse().map_err(|_| LoadError::Rational(format!("bad id in {k:?}"))))
            .collect::<Result<_, _>>()?;
        out.insert((ids[0], ids[1], ids[2]), parse_rat(v).map_err(LoadError::Rational)?);
    }
    Ok(out)
}

/// Point weights from the document's theta map (missing points default to 1).
pub fn theta_from_document(doc: &DgpdDocument) -> Result<Option<ThetaWeights>, LoadError> {
    let Some(map) = &doc.theta else {
        return Ok(None);
    };
    let mut values = vec![Rat::from_integer(1.into()); doc.points.len()];
    for (k, v) in map {
        let p: usize = k
            .trim()
            .parse()
            .map_err(|_| LoadError::Rational(format!("bad point key {k:?}")))?;
        if p >= values.len() {
            return Err(LoadError::Rational(format!("point key {k:?} out of range")));
        }
        values[p] = parse_rat(v).map_err(LoadError::Rational)?;
    }
    Ok(Some(ThetaWeights { values }))
}

struct EdgeParts {
    compose: Vec<(u32, u32, u32)>,
    identity: Vec<u32>,
    inverse: Vec<u32>,
}

/// Detects the identity element at each object of a partial composition and
/// derives inverses; failures are reported, not panicked.
fn derive_edge_parts(
    n_objects: usize,
    source: &[u32],
    target: &[u32],
    compose: &dyn Fn(u32, u32) -> Option<u32>,
    what: &str,
    rep: &mut ValidationReport,
) -> Option<EdgeParts> {
    let mut local = ValidationReport::default();
    let n = source.len() as u32;
    let mut identity = vec![u32::MAX; n_objects];
    for e in 0..n {
        if source[e as usize] != target[e as usize] || compose(e, e) != Some(e) {
            continue;
        }
        let neutral = (0..n).all(|f| {
            (source[f as usize] != target[e as usize] || compose(e, f) == Some(f))
                && (target[f as usize] != source[e as usize] || compose(f, e) == Some(f))
        });
        if neutral {
            identity[source[e as usize] as usize] = e;
        }
    }
    for (p, e) in identity.iter().enumerate() {
        if *e == u32::MAX {
            local.push(
                "missing-identity",
                vec![p as u32],
                format!("{what}: no identity found at object {p}"),
            );
        }
    }
    let mut inverse = vec![u32::MAX; n as usize];
    if local.is_valid() {
        for f in 0..n {
            for g in 0..n {
                if compose(f, g) == Some(identity[source[f as usize] as usize])
                    && compose(g, f) == Some(identity[target[f as usize] as usize])
                {
                    inverse[f as usize] = g;
                    break;
                }
            }
            if inverse[f as usize] == u32::MAX {
                local.push(
                    "missing-inverse",
                    vec![f],
                    format!("{what}: no inverse found for arrow {f}"),
                );
            }
        }
    }
    if !local.is_valid() {
        rep.merge(local);
        return None;
    }
    let mut triples = Vec::new();
    for f in 0..n {
        for g in 0..n {
            if let Some(h) = compose(f, g) {
                triples.push((f, g, h));
            }
        }
    }
    Some(EdgeParts {
        compose: triples,
        identity,
        inverse,
    })
}

/// Reconstructs the full structure from a document. Structural defects and
/// failed derivations come back as `LoadError::Structure`; the caller runs
/// `validate` on the result for the axiom-level verdict.
pub fn dgpd_from_document(doc: &DgpdDocument) -> Result<DoubleGroupoid, LoadError> {
    let mut rep = ValidationReport::default();
    let np = doc.points.len();
    let nh = doc.h_arrows.len();
    let nv = doc.v_arrows.len();
    let nb = doc.boxes.len();
    for (i, a) in doc.h_arrows.iter().enumerate() {
        if a.id as usize != i {
            rep.push("structural", vec![a.id], "horizontal arrow ids must be dense");
        }
        if a.l as usize >= np || a.r as usize >= np {
            rep.push("structural", vec![a.id], "horizontal arrow endpoint out of range");
        }
    }
    for (i, a) in doc.v_arrows.iter().enumerate() {
        if a.id as usize != i {
            rep.push("structural", vec![a.id], "vertical arrow ids must be dense");
        }
        if a.t as usize >= np || a.b as usize >= np {
            rep.push("structural", vec![a.id], "vertical arrow endpoint out of range");
        }
    }
    for (i, b) in doc.boxes.iter().enumerate() {
        if b.id as usize != i {
            rep.push("structural", vec![b.id], "box ids must be dense");
        }
        if b.t as usize >= nh || b.b as usize >= nh || b.l as usize >= nv || b.r as usize >= nv {
            rep.push("structural", vec![b.id], "box side out of range");
        }
    }
    let mut hmap = vec![u32::MAX; nb * nb];
    let mut vmap = vec![u32::MAX; nb * nb];
    for &(a, b, c) in &doc.hcompose {
        if a as usize >= nb || b as usize >= nb || c as usize >= nb {
            rep.push("structural", vec![a, b, c], "horizontal composition triple out of range");
            continue;
        }
        let slot = &mut hmap[a as usize * nb + b as usize];
        if *slot != u32::MAX && *slot != c {
            rep.push("structural", vec![a, b], "conflicting horizontal composition entries");
        }
        *slot = c;
    }
    for &(a, b, c) in &doc.vcompose {
        if a as usize >= nb || b as usize >= nb || c as usize >= nb {
            rep.push("structural", vec![a, b, c], "vertical composition triple out of range");
            continue;
        }
        let slot = &mut vmap[a as usize * nb + b as usize];
        if *slot != u32::MAX && *slot != c {
            rep.push("structural", vec![a, b], "conflicting vertical composition entries");
        }
        *slot = c;
    }
    if !rep.is_valid() {
        rep.sort();
        return Err(LoadError::Structure(rep));
    }

    let box_t: Vec<u32> = doc.boxes.iter().map(|b| b.t).collect();
    let box_b: Vec<u32> = doc.boxes.iter().map(|b| b.b).collect();
    let box_l: Vec<u32> = doc.boxes.iter().map(|b| b.l).collect();
    let box_r: Vec<u32> = doc.boxes.iter().map(|b| b.r).collect();
    let vc = |a: u32, b: u32| {
        let c = vmap[a as usize * nb + b as usize];
        (c != u32::MAX).then_some(c)
    };
    let hc = |a: u32, b: u32| {
        let c = hmap[a as usize * nb + b as usize];
        (c != u32::MAX).then_some(c)
    };

    // identity boxes for the two box compositions
    let vparts = derive_edge_parts(nh, &box_t, &box_b, &vc, "vertical box composition", &mut rep);
    let hparts = derive_edge_parts(nv, &box_l, &box_r, &hc, "horizontal box composition", &mut rep);
    let (Some(vparts), Some(hparts)) = (vparts, hparts) else {
        rep.sort();
        return Err(LoadError::Structure(rep));
    };
    let vid = vparts.identity; // horizontal arrow -> box
    let hid = hparts.identity; // vertical arrow -> box

    // edge compositions from identity-box composites
    let hsource: Vec<u32> = doc.h_arrows.iter().map(|a| a.l).collect();
    let htarget: Vec<u32> = doc.h_arrows.iter().map(|a| a.r).collect();
    let hedge = |x: u32, y: u32| -> Option<u32> {
        let c = hc(vid[x as usize], vid[y as usize])?;
        Some(box_t[c as usize])
    };
    let vsource: Vec<u32> = doc.v_arrows.iter().map(|a| a.t).collect();
    let vtarget: Vec<u32> = doc.v_arrows.iter().map(|a| a.b).collect();
    let vedge = |g: u32, h: u32| -> Option<u32> {
        let c = vc(hid[g as usize], hid[h as usize])?;
        Some(box_l[c as usize])
    };
    let hedge_parts = derive_edge_parts(np, &hsource, &htarget, &hedge, "horizontal edge groupoid", &mut rep);
    let vedge_parts = derive_edge_parts(np, &vsource, &vtarget, &vedge, "vertical edge groupoid", &mut rep);
    let (Some(hedge_parts), Some(vedge_parts)) = (hedge_parts, vedge_parts) else {
        rep.sort();
        return Err(LoadError::Structure(rep));
    };
    let horiz = Groupoid::from_tables(
        np,
        hsource,
        htarget,
        hedge_parts.identity,
        hedge_parts.inverse,
        &hedge_parts.compose,
    );
    let vert = Groupoid::from_tables(
        np,
        vsource,
        vtarget,
        vedge_parts.identity,
        vedge_parts.inverse,
        &vedge_parts.compose,
    );

    let tables = DgpdTables {
        n_points: np,
        point_names: doc.points.clone(),
        horiz,
        vert,
        box_t,
        box_b,
        box_l,
        box_r,
        hcompose: doc.hcompose.clone(),
        vcompose: doc.vcompose.clone(),
        vid,
        hid,
    };
    Ok(DoubleGroupoid::new_unvalidated(tables))
}

pub fn from_json(s: &str) -> Result<(DgpdDocument, DoubleGroupoid), LoadError> {
    let doc: DgpdDocument = serde_json::from_str(s)?;
    let dg = dgpd_from_document(&doc)?;
    Ok((doc, dg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn round_trip_is_byte_identical() {
        let (s3, two, _) = builders::s3_fixture();
        for dg in [
            builders::discrete_dgpd(3),
            builders::bimodule_dgpd(&builders::cyclic_group(2)),
            builders::no_siempre(1, 1).0,
            builders::comma(&s3, &two).unwrap(),
        ] {
            let theta = crate::wha::ThetaWeights::canonical(&dg).unwrap();
            let doc = document_of(&dg, Some(&theta), None, None, None);
            let text = to_json(&doc);
            let (doc2, dg2) = from_json(&text).unwrap();
            assert!(dg2.validate().is_valid());
            let text2 = to_json(&document_of(
                &dg2,
                theta_from_document(&doc2).unwrap().as_ref(),
                None,
                None,
                None,
            ));
            assert_eq!(text, text2);
        }
    }

    #[test]
    fn reconstruction_matches_original_structure() {
        let dg = builders::bimodule_dgpd(&builders::cyclic_group(3));
        let doc = document_of(&dg, None, None, None, None);
        let dg2 = dgpd_from_document(&doc).unwrap();
        for a in dg.boxes() {
            assert_eq!(dg2.t(a), dg.t(a));
            assert_eq!(dg2.hinv(a), dg.hinv(a));
            assert_eq!(dg2.vinv(a), dg.vinv(a));
        }
        for x in dg.horiz.arrows() {
            assert_eq!(dg2.vid(x), dg.vid(x));
        }
        assert_eq!(dg2.horiz, dg.horiz);
        assert_eq!(dg2.vert, dg.vert);
    }

    #[test]
    fn empty_boxes_with_arrows_reports_missing_identities() {
        let doc = DgpdDocument {
            points: vec!["P".into()],
            h_arrows: vec![HArrowDoc { id: 0, l: 0, r: 0 }],
            v_arrows: vec![VArrowDoc { id: 0, t: 0, b: 0 }],
            boxes: vec![],
            hcompose: vec![],
            vcompose: vec![],
            ..Default::default()
        };
        match dgpd_from_document(&doc) {
            Err(LoadError::Structure(rep)) => {
                assert!(rep.has_axiom("missing-identity"));
            }
            other => panic!("expected structural failure, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(from_json("{ not json"), Err(LoadError::Json(_))));
    }

    #[test]
    fn dangling_ids_are_structural() {
        let dg = builders::discrete_dgpd(1);
        let mut doc = document_of(&dg, None, None, None, None);
        doc.boxes[0].t = 99;
        match dgpd_from_document(&doc) {
            Err(LoadError::Structure(rep)) => assert!(rep.has_axiom("structural")),
            other => panic!("expected structural failure, got {other:?}"),
        }
    }

    #[test]
    fn theta_map_parses() {
        let dg = builders::no_siempre(1, 1).0;
        let theta = crate::wha::ThetaWeights::canonical(&dg).unwrap();
        let doc = document_of(&dg, Some(&theta), None, None, None);
        let parsed = theta_from_document(&doc).unwrap().unwrap();
        assert_eq!(parsed, theta);
    }
}

#[cfg(test)]
mod groupoid_doc_tests {
    use super::*;
    use crate::builders;
    use crate::core_groupoids::{build_core, CoreSide};
    use crate::groupoid::validate_groupoid;

    #[test]
    fn groupoid_document_round_trip() {
        let (s3, two, _) = builders::s3_fixture();
        let dg = builders::comma(&s3, &two).unwrap();
        for side in [CoreSide::D, CoreSide::E] {
            let core = build_core(&dg, side);
            let doc = groupoid_document(&core.as_groupoid, &dg.point_names);
            let back = groupoid_from_document(&doc).unwrap();
            assert!(validate_groupoid(&back).is_valid());
            assert_eq!(back, core.as_groupoid);
        }
    }
}
