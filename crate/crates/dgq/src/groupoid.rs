//! Finite groupoids with dense integer ids.
//!
//! Arrows and objects are array indices and every structure map is a table,
//! so the exhaustive validators and the corner-counting loops downstream run
//! with O(1) lookups. Composition is stored totally with the sentinel
//! [`UNDEF`] marking non-composable pairs.

use crate::report::ValidationReport;
use serde::{Deserialize, Serialize};

/// Sentinel for "composition not defined".
pub const UNDEF: u32 = u32::MAX;

/// A finite groupoid `G ⇉ P`. Composition is written left to right:
/// `compose(f, g)` is defined exactly when `target(f) = source(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Groupoid {
    pub n_objects: usize,
    pub n_arrows: usize,
    pub source: Vec<u32>,
    pub target: Vec<u32>,
    /// object -> its identity arrow
    pub identity: Vec<u32>,
    /// arrow -> its inverse
    pub inverse: Vec<u32>,
    /// row-major `n_arrows × n_arrows` table; `UNDEF` where not composable
    compose: Vec<u32>,
}

impl Groupoid {
    /// Assembles a groupoid from tables, filling the dense composition table
    /// from the triples `(f, g, fg)`.
    pub fn from_tables(
        n_objects: usize,
        source: Vec<u32>,
        target: Vec<u32>,
        identity: Vec<u32>,
        inverse: Vec<u32>,
        compose_triples: &[(u32, u32, u32)],
    ) -> Groupoid {
        let n_arrows = source.len();
        let mut compose = vec![UNDEF; n_arrows * n_arrows];
        for &(f, g, h) in compose_triples {
            compose[f as usize * n_arrows + g as usize] = h;
        }
        Groupoid {
            n_objects,
            n_arrows,
            source,
            target,
            identity,
            inverse,
            compose,
        }
    }

    /// Builds a groupoid from closures, deriving identities and inverses.
    /// Panics if the data does not determine them; intended for the named
    /// constructions below, which are groupoids by construction.
    pub fn from_rules(
        n_objects: usize,
        n_arrows: usize,
        source: impl Fn(u32) -> u32,
        target: impl Fn(u32) -> u32,
        compose: impl Fn(u32, u32) -> Option<u32>,
    ) -> Groupoid {
        let src: Vec<u32> = (0..n_arrows as u32).map(&source).collect();
        let tgt: Vec<u32> = (0..n_arrows as u32).map(&target).collect();
        let mut table = vec![UNDEF; n_arrows * n_arrows];
        for f in 0..n_arrows as u32 {
            for g in 0..n_arrows as u32 {
                if tgt[f as usize] == src[g as usize] {
                    if let Some(h) = compose(f, g) {
                        table[f as usize * n_arrows + g as usize] = h;
                    }
                }
            }
        }
        let mut identity = vec![UNDEF; n_objects];
        for f in 0..n_arrows as u32 {
            let (s, t) = (src[f as usize], tgt[f as usize]);
            if s == t && table[f as usize * n_arrows + f as usize] == f {
                // an idempotent endo-arrow in a groupoid must be the identity
                let neutral = (0..n_arrows as u32).all(|g| {
                    (src[g as usize] != t || table[f as usize * n_arrows + g as usize] == g)
                        && (tgt[g as usize] != s || table[g as usize * n_arrows + f as usize] == g)
                });
                if neutral {
                    identity[s as usize] = f;
                }
            }
        }
        assert!(
            identity.iter().all(|&e| e != UNDEF),
            "identity arrows missing"
        );
        let mut inverse = vec![UNDEF; n_arrows];
        for f in 0..n_arrows as u32 {
            for g in 0..n_arrows as u32 {
                if table[f as usize * n_arrows + g as usize]
                    == identity[src[f as usize] as usize]
                    && table[g as usize * n_arrows + f as usize]
                        == identity[tgt[f as usize] as usize]
                {
                    inverse[f as usize] = g;
                    break;
                }
            }
        }
        assert!(inverse.iter().all(|&i| i != UNDEF), "inverses missing");
        Groupoid {
            n_objects,
            n_arrows,
            source: src,
            target: tgt,
            identity,
            inverse,
            compose: table,
        }
    }

    #[inline]
    pub fn compose(&self, f: u32, g: u32) -> Option<u32> {
        let h = self.compose[f as usize * self.n_arrows + g as usize];
        (h != UNDEF).then_some(h)
    }

    #[inline]
    pub fn source(&self, f: u32) -> u32 {
        self.source[f as usize]
    }

    #[inline]
    pub fn target(&self, f: u32) -> u32 {
        self.target[f as usize]
    }

    #[inline]
    pub fn identity(&self, p: u32) -> u32 {
        self.identity[p as usize]
    }

    #[inline]
    pub fn inverse(&self, f: u32) -> u32 {
        self.inverse[f as usize]
    }

    pub fn is_identity(&self, f: u32) -> bool {
        self.identity[self.source(f) as usize] == f
    }

    pub fn arrows(&self) -> impl Iterator<Item = u32> {
        0..self.n_arrows as u32
    }

    pub fn objects(&self) -> impl Iterator<Item = u32> {
        0..self.n_objects as u32
    }

    /// Is this a group presented as a one-object groupoid?
    pub fn is_group(&self) -> bool {
        self.n_objects == 1
    }
}

/// Exhaustively checks every groupoid axiom, reporting one violation per
/// (axiom, witness). Structural problems (ids out of range) short-circuit:
/// axiom checks on dangling ids would be meaningless.
pub fn validate_groupoid(g: &Groupoid) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let n = g.n_arrows as u32;
    let mut structural = false;
    let bad = |rep: &mut ValidationReport, axiom: &str, w: Vec<u32>, m: String| {
        rep.push(axiom, w, m);
    };

    for f in 0..n {
        if g.source(f) as usize >= g.n_objects || g.target(f) as usize >= g.n_objects {
            bad(&mut rep, "structural", vec![f], format!("arrow {f} has dangling endpoint"));
            structural = true;
        }
        if g.inverse(f) >= n {
            bad(&mut rep, "structural", vec![f], format!("arrow {f} has dangling inverse"));
            structural = true;
        }
    }
    for p in 0..g.n_objects as u32 {
        if g.identity(p) >= n {
            bad(&mut rep, "structural", vec![p], format!("object {p} has dangling identity"));
            structural = true;
        }
    }
    for f in 0..n {
        for h in 0..n {
            if let Some(c) = g.compose(f, h) {
                if c >= n {
                    bad(&mut rep, "structural", vec![f, h], "dangling composite".into());
                    structural = true;
                }
            }
        }
    }
    if structural {
        return rep;
    }

    for p in 0..g.n_objects as u32 {
        let e = g.identity(p);
        if g.source(e) != p || g.target(e) != p {
            bad(
                &mut rep,
                "identity-endpoints",
                vec![p],
                format!("identity of object {p} is not an endo-arrow at {p}"),
            );
        }
    }

    for f in 0..n {
        for h in 0..n {
            let defined = g.compose(f, h).is_some();
            let should = g.target(f) == g.source(h);
            if defined != should {
                bad(
                    &mut rep,
                    "compose-domain",
                    vec![f, h],
                    format!("compose({f},{h}) defined={defined}, expected={should}"),
                );
            }
            if let Some(c) = g.compose(f, h) {
                if g.source(c) != g.source(f) || g.target(c) != g.target(h) {
                    bad(
                        &mut rep,
                        "compose-endpoints",
                        vec![f, h],
                        format!("compose({f},{h}) has wrong endpoints"),
                    );
                }
            }
        }
    }

    // associativity over the composable range; pairs outside it were already
    // checked against the domain rule above, so both sides vanish together
    let mut by_source: Vec<Vec<u32>> = vec![Vec::new(); g.n_objects];
    for f in 0..n {
        if (g.source(f) as usize) < g.n_objects {
            by_source[g.source(f) as usize].push(f);
        }
    }
    for f in 0..n {
        for &h in &by_source[g.target(f) as usize] {
            for &k in &by_source[g.target(h) as usize] {
                let fg_k = g.compose(f, h).and_then(|fh| g.compose(fh, k));
                let f_gk = g.compose(h, k).and_then(|hk| g.compose(f, hk));
                if fg_k != f_gk {
                    bad(
                        &mut rep,
                        "associativity",
                        vec![f, h, k],
                        format!("(fg)h={fg_k:?} vs f(gh)={f_gk:?}"),
                    );
                }
            }
        }
    }

    for f in 0..n {
        let es = g.identity(g.source(f));
        let et = g.identity(g.target(f));
        if g.compose(es, f) != Some(f) || g.compose(f, et) != Some(f) {
            bad(
                &mut rep,
                "identity-neutral",
                vec![f],
                format!("identities are not two-sided units at arrow {f}"),
            );
        }
    }

    for f in 0..n {
        let i = g.inverse(f);
        let ok = g.compose(f, i) == Some(g.identity(g.source(f)))
            && g.compose(i, f) == Some(g.identity(g.target(f)));
        if !ok {
            bad(
                &mut rep,
                "inverse-law",
                vec![f],
                format!("inverse of arrow {f} fails the two-sided inverse law"),
            );
        }
    }

    rep.sort();
    rep
}

/// Blocks of the object set under "some arrow joins them".
pub fn connected_components(g: &Groupoid) -> Vec<Vec<u32>> {
    let mut parent: Vec<u32> = (0..g.n_objects as u32).collect();
    fn find(parent: &mut [u32], x: u32) -> u32 {
        let mut x = x;
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for f in g.arrows() {
        let a = find(&mut parent, g.source(f));
        let b = find(&mut parent, g.target(f));
        if a != b {
            parent[a as usize] = b;
        }
    }
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); g.n_objects];
    for p in 0..g.n_objects as u32 {
        let root = find(&mut parent, p);
        blocks[root as usize].push(p);
    }
    let mut out: Vec<Vec<u32>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
    out.sort();
    out
}

pub fn is_connected(g: &Groupoid) -> bool {
    connected_components(g).len() <= 1
}

/// Objects only, no non-identity arrows.
pub fn discrete(n_objects: usize) -> Groupoid {
    Groupoid::from_rules(
        n_objects,
        n_objects,
        |f| f,
        |f| f,
        |f, g| (f == g).then_some(f),
    )
}

/// Exactly one arrow between any ordered pair of objects (the pair groupoid).
pub fn coarse(n_objects: usize) -> Groupoid {
    let n = n_objects as u32;
    Groupoid::from_rules(
        n_objects,
        n_objects * n_objects,
        move |f| f / n,
        move |f| f % n,
        move |f, g| (f % n == g / n).then_some((f / n) * n + g % n),
    )
}

/// Pair `(p, q)` as an arrow id of `coarse(n)`.
pub fn coarse_arrow(n_objects: usize, p: u32, q: u32) -> u32 {
    p * n_objects as u32 + q
}

/// One-object groupoid from a group multiplication table
/// (`table[a][b] = ab`, identity must be element 0).
pub fn group_from_table(table: &[Vec<u32>]) -> Groupoid {
    let n = table.len();
    for row in table {
        assert_eq!(row.len(), n, "multiplication table must be square");
    }
    assert!(
        (0..n as u32).all(|a| table[0][a as usize] == a && table[a as usize][0] == a),
        "element 0 must be the unit"
    );
    let t: Vec<Vec<u32>> = table.to_vec();
    Groupoid::from_rules(1, n, |_| 0, |_| 0, move |a, b| {
        Some(t[a as usize][b as usize])
    })
}

/// Direct product of two groupoids.
pub fn direct_product(a: &Groupoid, b: &Groupoid) -> Groupoid {
    let (na, nb) = (a.n_arrows as u32, b.n_arrows as u32);
    let (oa, ob) = (a.n_objects as u32, b.n_objects as u32);
    let a2 = a.clone();
    let b2 = b.clone();
    let a3 = a.clone();
    let b3 = b.clone();
    Groupoid::from_rules(
        (oa * ob) as usize,
        (na * nb) as usize,
        move |f| a2.source(f / nb) * ob + b2.source(f % nb),
        move |f| a3.target(f / nb) * ob + b3.target(f % nb),
        {
            let a = a.clone();
            let b = b.clone();
            move |f, g| {
                let x = a.compose(f / nb, g / nb)?;
                let y = b.compose(f % nb, g % nb)?;
                Some(x * nb + y)
            }
        },
    )
}

/// Same arrows, reversed composition.
pub fn opposite(g: &Groupoid) -> Groupoid {
    let g2 = g.clone();
    let g3 = g.clone();
    let g4 = g.clone();
    Groupoid::from_rules(
        g.n_objects,
        g.n_arrows,
        move |f| g2.target(f),
        move |f| g3.source(f),
        move |f, h| g4.compose(h, f),
    )
}

/// A right action of a group on a finite set, given as `act[x][g] = x·g`.
/// Rejected with a witness when the table is not a unital associative action.
pub fn transformation(
    set_size: usize,
    group: &Groupoid,
    act: &[Vec<u32>],
) -> Result<Groupoid, String> {
    assert!(group.is_group(), "transformation groupoid expects a group");
    let n = group.n_arrows as u32;
    if act.len() != set_size || act.iter().any(|r| r.len() != n as usize) {
        return Err("action table has wrong shape".into());
    }
    for x in 0..set_size as u32 {
        if act[x as usize][0] != x {
            return Err(format!("unit does not fix point {x}"));
        }
        for g in 0..n {
            if act[x as usize][g as usize] as usize >= set_size {
                return Err(format!("action value out of range at ({x},{g})"));
            }
            for h in 0..n {
                let gh = group.compose(g, h).unwrap();
                let lhs = act[act[x as usize][g as usize] as usize][h as usize];
                let rhs = act[x as usize][gh as usize];
                if lhs != rhs {
                    return Err(format!("action not associative at ({x},{g},{h})"));
                }
            }
        }
    }
    let act: Vec<Vec<u32>> = act.to_vec();
    let act2 = act.clone();
    let group2 = group.clone();
    // arrows are pairs (x, g): x --g--> x·g
    Ok(Groupoid::from_rules(
        set_size,
        set_size * n as usize,
        move |f| f / n,
        move |f| act[(f / n) as usize][(f % n) as usize],
        move |f, g| {
            let (x, a) = (f / n, f % n);
            let b = g % n;
            if act2[x as usize][a as usize] != g / n {
                return None;
            }
            Some(x * n + group2.compose(a, b).unwrap())
        },
    ))
}

/// Pairs `(x, g)` of arrows of `h` and `v` over a common base with
/// `l(x) = b(g)` and `r(x) = t(g)`, multiplied componentwise with the first
/// factor reversed. Here `h` is read with source `l`/target `r` and `v` with
/// source `t`/target `b`.
pub fn restricted_product(h: &Groupoid, v: &Groupoid) -> Groupoid {
    assert_eq!(h.n_objects, v.n_objects);
    let mut pairs = Vec::new();
    for x in h.arrows() {
        for g in v.arrows() {
            if h.source(x) == v.target(g) && h.target(x) == v.source(g) {
                pairs.push((x, g));
            }
        }
    }
    let index: std::collections::HashMap<(u32, u32), u32> = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    let pairs2 = pairs.clone();
    let pairs3 = pairs.clone();
    let pairs4 = pairs.clone();
    let h2 = h.clone();
    let h3 = h.clone();
    let (h4, v4) = (h.clone(), v.clone());
    Groupoid::from_rules(
        h.n_objects,
        pairs.len(),
        move |f| {
            let (x, _) = pairs2[f as usize];
            h2.target(x) // = t(g): the source of the pair
        },
        move |f| {
            let (x, _) = pairs3[f as usize];
            h3.source(x) // = b(g)
        },
        move |f, g| {
            let (x1, g1) = pairs4[f as usize];
            let (x2, g2) = pairs4[g as usize];
            let x = h4.compose(x2, x1)?; // first factor composes in reverse
            let gg = v4.compose(g1, g2)?;
            index.get(&(x, gg)).copied()
        },
    )
}
