//! `dgq` — build, validate and analyze finite double groupoids and their
//! weak Hopf algebras, over exact rational arithmetic.
//!
//! Exit codes: 0 success / all checks pass; 1 axiom or verification
//! failures; 2 parse or I/O errors; 3 inadmissible weight data; 4 fusion
//! criterion fails for a dimension table.

use clap::{Args, Parser, Subcommand};
use dgq::builders;
use dgq::cocycles::{SigmaCochain, TauCochain, ThreeCocycle};
use dgq::rational::show_rat;
use dgq::representations::{dimensions, is_fusion, vertical_classes};
use dgq::schema::{self, DgpdDocument, LoadError};
use dgq::verify::verify_axioms;
use dgq::wha::{antipode_analysis, check_theta_admissible, ThetaWeights, WeakHopf};
use dgq::DoubleGroupoid;
use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_OK: u8 = 0;
const EXIT_AXIOM: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INADMISSIBLE: u8 = 3;
const EXIT_NOT_FUSION: u8 = 4;

#[derive(Parser)]
#[command(name = "dgq", version, about = "weak Hopf algebras from finite double groupoids", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively validate every double-groupoid axiom of a document
    Validate {
        /// input file, or `-` for stdin
        file: String,
        /// emit the report as JSON (always on; kept for symmetry)
        #[arg(long)]
        json: bool,
    },
    /// Construct a built-in family and write its document
    Build(BuildArgs),
    /// Assemble the weak Hopf algebra and optionally verify every axiom
    Wha {
        file: String,
        /// `canonical` (corner reciprocals) or a path to a weight file
        #[arg(long, default_value = "canonical")]
        theta: String,
        /// vertical 2-cocycle file (requires --tau)
        #[arg(long)]
        sigma: Option<PathBuf>,
        /// horizontal 2-cocycle file
        #[arg(long)]
        tau: Option<PathBuf>,
        /// run the exhaustive axiom verifier and the antipode analysis
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Fusion verdict and the dimension table of the simple modules
    Rep {
        file: String,
        #[arg(long, default_value = "canonical")]
        theta: String,
        /// seed for the spectral step of the dimension computation
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// print the table as CSV
        #[arg(long)]
        csv: bool,
    },
    /// Structural summary: sizes, corner table, flags, core groupoids
    Info {
        file: String,
        #[arg(long)]
        json: bool,
        /// emit a CSV table instead: `theta` or `corners`
        #[arg(long)]
        csv: Option<String>,
        /// export a core groupoid document instead: `d` or `e`
        #[arg(long)]
        core: Option<String>,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// family: discrete, no-siempre, matched-pair-s3, bimodule, vec-g-omega, comma
    family: String,
    /// output file (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// points for `discrete`
    #[arg(long, default_value_t = 3)]
    points: usize,
    /// parameters for `no-siempre`
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// group for `bimodule` / `vec-g-omega`: c2, c3, c4, s3, coarse2
    #[arg(long, default_value = "c2")]
    group: String,
    /// 3-cocycle for `vec-g-omega`: trivial or sign
    #[arg(long, default_value = "trivial")]
    omega: String,
    /// ambient group for `comma`: s3
    #[arg(long, default_value = "s3", value_name = "GROUP")]
    big: String,
    /// subgroup for `comma`: s2, c3, trivial, all
    #[arg(long, default_value = "s2", value_name = "SUBGROUP")]
    sub: String,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("DGQ_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { file, json: _ } => cmd_validate(&file),
        Command::Build(args) => cmd_build(&args),
        Command::Wha {
            file,
            theta,
            sigma,
            tau,
            verify,
            json,
        } => cmd_wha(&file, &theta, sigma.as_deref(), tau.as_deref(), verify, json),
        Command::Rep {
            file,
            theta,
            seed,
            csv,
        } => cmd_rep(&file, &theta, seed, csv),
        Command::Info { file, json, csv, core } => cmd_info(&file, json, csv.as_deref(), core.as_deref()),
    };
    ExitCode::from(code)
}

fn read_input(file: &str) -> Result<String, String> {
    if file == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))
    }
}

fn load(file: &str) -> Result<(DgpdDocument, DoubleGroupoid), u8> {
    let text = match read_input(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(EXIT_PARSE);
        }
    };
    match schema::from_json(&text) {
        Ok(pair) => Ok(pair),
        Err(LoadError::Json(e)) => {
            eprintln!("error: json parse: {e}");
            Err(EXIT_PARSE)
        }
        Err(LoadError::Rational(e)) => {
            eprintln!("error: {e}");
            Err(EXIT_PARSE)
        }
        Err(LoadError::Structure(rep)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&rep).expect("report serializes")
            );
            Err(EXIT_AXIOM)
        }
    }
}

fn cmd_validate(file: &str) -> u8 {
    let (_, dg) = match load(file) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let rep = dg.validate();
    println!(
        "{}",
        serde_json::to_string_pretty(&rep).expect("report serializes")
    );
    if rep.is_valid() {
        EXIT_OK
    } else {
        EXIT_AXIOM
    }
}

fn group_by_name(name: &str) -> Result<dgq::Groupoid, String> {
    match name {
        "c2" => Ok(builders::cyclic_group(2)),
        "c3" => Ok(builders::cyclic_group(3)),
        "c4" => Ok(builders::cyclic_group(4)),
        "s3" => Ok(builders::s3_fixture().0),
        "coarse2" => Ok(dgq::groupoid::coarse(2)),
        "trivial" => Ok(builders::trivial_group()),
        other => Err(format!("unknown group {other:?}")),
    }
}

type BuiltFamily = (
    DoubleGroupoid,
    Option<ThetaWeights>,
    Option<BTreeMap<(u32, u32), dgq::Rat>>,
    Option<BTreeMap<(u32, u32, u32), dgq::Rat>>,
);

fn cmd_build(args: &BuildArgs) -> u8 {
    let built: Result<BuiltFamily, String> = (|| {
        match args.family.as_str() {
            "discrete" => Ok((builders::discrete_dgpd(args.points), None, None, None)),
            "no-siempre" => Ok((builders::no_siempre(args.m, args.n).0, None, None, None)),
            "matched-pair-s3" => Ok((builders::matched_pair_s3(), None, None, None)),
            "bimodule" => Ok((builders::bimodule_dgpd(&group_by_name(&args.group)?), None, None, None)),
            "vec-g-omega" => {
                let g = group_by_name(&args.group)?;
                let omega = match args.omega.as_str() {
                    "trivial" => ThreeCocycle::trivial(&g),
                    "sign" => {
                        if g.n_arrows != 2 {
                            return Err("the sign 3-cocycle needs the 2-element group".into());
                        }
                        ThreeCocycle::sign_on_c2(&g)
                    }
                    other => return Err(format!("unknown 3-cocycle {other:?}")),
                };
                let (dg, sigma) = builders::vec_g_omega(&g, &omega)?;
                let sigma_map: BTreeMap<(u32, u32), dgq::Rat> =
                    sigma.values.into_iter().collect();
                let omega_map: BTreeMap<(u32, u32, u32), dgq::Rat> =
                    omega.values.into_iter().collect();
                Ok((dg, None, Some(sigma_map), Some(omega_map)))
            }
            "comma" => {
                let g = group_by_name(&args.big)?;
                let sub: Vec<u32> = match args.sub.as_str() {
                    "s2" => builders::s3_fixture().1,
                    "c3" => builders::s3_fixture().2,
                    "trivial" => vec![0],
                    "all" => (0..g.n_arrows as u32).collect(),
                    other => return Err(format!("unknown subgroup {other:?}")),
                };
                Ok((builders::comma(&g, &sub)?, None, None, None))
            }
            other => Err(format!("unknown family {other:?}")),
        }
    })();
    let (dg, theta, sigma, omega) = match built {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let doc = schema::document_of(&dg, theta.as_ref(), sigma.as_ref(), None, omega.as_ref());
    let text = schema::to_json(&doc);
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_PARSE;
            }
        }
        None => print!("{text}"),
    }
    EXIT_OK
}

fn parse_theta(
    dg: &DoubleGroupoid,
    doc: &DgpdDocument,
    arg: &str,
) -> Result<ThetaWeights, u8> {
    if arg == "canonical" {
        if let Some(embedded) = schema::theta_from_document(doc).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_PARSE
        })? {
            return Ok(embedded);
        }
        return ThetaWeights::canonical(dg).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_INADMISSIBLE
        });
    }
    let text = std::fs::read_to_string(arg).map_err(|e| {
        eprintln!("error: {arg}: {e}");
        EXIT_PARSE
    })?;
    let map: BTreeMap<String, String> = serde_json::from_str(&text).map_err(|e| {
        eprintln!("error: {arg}: {e}");
        EXIT_PARSE
    })?;
    let mut values = vec![dgq::Rat::from_integer(1.into()); dg.n_points];
    for (k, v) in &map {
        let p: usize = k.trim().parse().map_err(|_| {
            eprintln!("error: bad point key {k:?}");
            EXIT_PARSE
        })?;
        if p >= values.len() {
            eprintln!("error: point key {k:?} out of range");
            return Err(EXIT_PARSE);
        }
        values[p] = dgq::rational::parse_rat(v).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_PARSE
        })?;
    }
    ThetaWeights::new(values).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_PARSE
    })
}

fn parse_pair_cochain(path: &std::path::Path) -> Result<BTreeMap<(u32, u32), dgq::Rat>, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_PARSE
    })?;
    let map: BTreeMap<String, String> = serde_json::from_str(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_PARSE
    })?;
    schema::parse_pair_map(&map).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_PARSE
    })
}

fn build_wha(
    dg: Arc<DoubleGroupoid>,
    doc: &DgpdDocument,
    theta_arg: &str,
    sigma: Option<&std::path::Path>,
    tau: Option<&std::path::Path>,
) -> Result<WeakHopf, u8> {
    if sigma.is_some() || tau.is_some() {
        let (Some(sp), Some(tp)) = (sigma, tau) else {
            eprintln!("error: --sigma and --tau must be given together");
            return Err(EXIT_PARSE);
        };
        let sigma = SigmaCochain {
            values: parse_pair_cochain(sp)?.into_iter().collect(),
        };
        let tau = TauCochain {
            values: parse_pair_cochain(tp)?.into_iter().collect(),
        };
        return WeakHopf::with_sigma_tau(dg, sigma, tau).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_INADMISSIBLE
        });
    }
    // embedded sigma (e.g. from the vacancy builder) takes precedence
    if let Some(sigma_map) = &doc.sigma {
        let sigma = SigmaCochain {
            values: schema::parse_pair_map(sigma_map)
                .map_err(|e| {
                    eprintln!("error: {e}");
                    EXIT_PARSE
                })?
                .into_iter()
                .collect(),
        };
        let tau = match &doc.tau {
            Some(tau_map) => TauCochain {
                values: schema::parse_pair_map(tau_map)
                    .map_err(|e| {
                        eprintln!("error: {e}");
                        EXIT_PARSE
                    })?
                    .into_iter()
                    .collect(),
            },
            None => TauCochain::trivial(&dg),
        };
        return WeakHopf::with_sigma_tau(dg, sigma, tau).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_INADMISSIBLE
        });
    }
    let theta = parse_theta(&dg, doc, theta_arg)?;
    if theta_arg == "canonical" && doc.theta.is_none() {
        return WeakHopf::canonical(dg).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_INADMISSIBLE
        });
    }
    let rep = check_theta_admissible(&dg, &theta);
    if let Some((g, x, sum)) = rep.failures.first() {
        eprintln!(
            "error: weights inadmissible at vertical arrow {g}, horizontal arrow {x}: fiber sum {}",
            show_rat(sum)
        );
        return Err(EXIT_INADMISSIBLE);
    }
    WeakHopf::with_theta(dg, theta).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_INADMISSIBLE
    })
}

fn cmd_wha(
    file: &str,
    theta_arg: &str,
    sigma: Option<&std::path::Path>,
    tau: Option<&std::path::Path>,
    verify: bool,
    json: bool,
) -> u8 {
    let (doc, dg) = match load(file) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let rep = dg.validate();
    if !rep.is_valid() {
        println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
        return EXIT_AXIOM;
    }
    let w = match build_wha(Arc::new(dg), &doc, theta_arg, sigma, tau) {
        Ok(w) => w,
        Err(code) => return code,
    };
    println!(
        "assembled: {} boxes, deformation {:?}, antipode {}",
        w.dgpd.n_boxes,
        w.kind,
        if w.antipode.is_some() { "present" } else { "absent" }
    );
    if let Some(compat) = &w.compatibility {
        println!("weak-bialgebra conditions hold: {}", compat.all_hold());
    }
    if !verify {
        return EXIT_OK;
    }
    let report = verify_axioms(&w);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("axiom report: {report}");
    }
    let mut ok = report.is_clean();
    if w.theta.is_some() {
        match antipode_analysis(&w) {
            Ok(an) => {
                let mut spectrum: Vec<String> = an
                    .s2_scalars
                    .iter()
                    .map(show_rat)
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                spectrum.sort();
                println!("antipode-square spectrum: {{{}}}", spectrum.join(", "));
                println!(
                    "involutive: {}, regular: {}, closed form: {}, unit families: {}",
                    an.is_involutive, an.is_regular, an.closed_form_ok, an.unit_family_antipode_ok
                );
                ok &= an.is_regular && an.closed_form_ok && an.unit_family_antipode_ok;
                // pivotal identities
                let g = w.pivotal().expect("point-weight form");
                let sw = w
                    .antipode_elem(&w.pivotal_w().expect("point-weight form"))
                    .unwrap();
                let g2 = w.product(&sw, &w.pivotal_w_inverse().expect("point-weight form"));
                let conj_ok = w.dgpd.boxes().all(|a| {
                    let ea = dgq::Element::basis(a);
                    let lhs = w.antipode_elem(&w.antipode_elem(&ea).unwrap()).unwrap();
                    let rhs = w.product(
                        &w.product(&w.pivotal_inverse().unwrap(), &ea),
                        &g,
                    );
                    lhs == rhs
                });
                let grouplike_ok = w.coproduct(&g)
                    == w.tensor2_mul(
                        &w.delta_one(),
                        &dgq::Tensor2::from_pair(&g, &g),
                    );
                println!(
                    "pivotal identities: grouplike from twisted root: {}, conjugation: {}, coproduct: {}",
                    g == g2, conj_ok, grouplike_ok
                );
                ok &= g == g2 && conj_ok && grouplike_ok;
            }
            Err(e) => println!("antipode analysis unavailable: {e}"),
        }
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_AXIOM
    }
}

fn cmd_rep(file: &str, theta_arg: &str, seed: u64, csv: bool) -> u8 {
    let (doc, dg) = match load(file) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let rep = dg.validate();
    if !rep.is_valid() {
        println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
        return EXIT_AXIOM;
    }
    let w = match build_wha(Arc::new(dg), &doc, theta_arg, None, None) {
        Ok(w) => w,
        Err(code) => return code,
    };
    let verdict = is_fusion(&w);
    println!(
        "fusion: {} (vertical groupoid connected: {}, unique bottoms on the right-top core: {})",
        verdict.is_fusion(),
        verdict.vertical_connected,
        verdict.unique_bottom
    );
    if let Some((e1, e2)) = verdict.witness {
        println!("shared-bottom witness: boxes {e1} and {e2}");
    }
    if !verdict.is_fusion() {
        return EXIT_NOT_FUSION;
    }
    match dimensions(&w, seed) {
        Ok(table) => {
            if csv {
                println!("class,class_size,loop_order,irrep_dim,qdim,fpdim");
                for s in &table.simples {
                    println!(
                        "{},{},{},{},{},{}",
                        s.class_index,
                        s.class_size,
                        s.loop_order,
                        s.irrep_dim,
                        show_rat(&s.qdim),
                        s.fpdim.as_ref().map(show_rat).unwrap_or_default()
                    );
                }
            } else {
                for s in &table.simples {
                    println!(
                        "simple: class {} (size {}), loop order {}, irrep dim {}, qdim {}, fpdim {}",
                        s.class_index,
                        s.class_size,
                        s.loop_order,
                        s.irrep_dim,
                        show_rat(&s.qdim),
                        s.fpdim.as_ref().map(show_rat).unwrap_or_default()
                    );
                }
            }
            println!(
                "global quantum dimension: {}; pseudo-unitary: {}; integral: {}",
                show_rat(&table.global_qdim),
                table.pseudo_unitary,
                table.all_fpdims_integral
            );
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_NOT_FUSION
        }
    }
}

fn cmd_info(file: &str, json: bool, csv: Option<&str>, core: Option<&str>) -> u8 {
    let (_, dg) = match load(file) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let rep = dg.validate();
    if !rep.is_valid() {
        println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
        return EXIT_AXIOM;
    }
    if let Some(side) = core {
        let side = match side {
            "d" => dgq::core_groupoids::CoreSide::D,
            "e" => dgq::core_groupoids::CoreSide::E,
            other => {
                eprintln!("error: unknown core {other:?} (expected d or e)");
                return EXIT_PARSE;
            }
        };
        let core = dgq::core_groupoids::build_core(&dg, side);
        let doc = schema::groupoid_document(&core.as_groupoid, &dg.point_names);
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("document serializes")
        );
        return EXIT_OK;
    }
    match csv {
        Some("theta") => {
            println!("point,value");
            for p in 0..dg.n_points {
                println!("{p},{}", dg.theta(p as u32));
            }
            return EXIT_OK;
        }
        Some("corners") => {
            println!("kind,vertical_arrow,horizontal_arrow,value");
            for (kind, name) in [
                (dgq::CornerKind::UpperLeft, "ul"),
                (dgq::CornerKind::UpperRight, "ur"),
                (dgq::CornerKind::LowerLeft, "ll"),
                (dgq::CornerKind::LowerRight, "lr"),
            ] {
                for g in dg.vert.arrows() {
                    for x in dg.horiz.arrows() {
                        if let Ok(v) = dg.corner(kind, g, x) {
                            println!("{name},{g},{x},{v}");
                        }
                    }
                }
            }
            return EXIT_OK;
        }
        Some(other) => {
            eprintln!("error: unknown csv table {other:?}");
            return EXIT_PARSE;
        }
        None => {}
    }
    let flags = dg.transitivity_flags();
    let classes = vertical_classes(&dg);
    let core_d = dgq::core_groupoids::build_core(&dg, dgq::core_groupoids::CoreSide::D);
    let core_e = dgq::core_groupoids::build_core(&dg, dgq::core_groupoids::CoreSide::E);
    if json {
        let summary = serde_json::json!({
            "points": dg.n_points,
            "h_arrows": dg.horiz.n_arrows,
            "v_arrows": dg.vert.n_arrows,
            "boxes": dg.n_boxes,
            "theta": dg.theta_table(),
            "filling": dg.filling_condition(),
            "vacant": dg.is_vacant(),
            "horizontally_transitive": flags.horizontally_transitive,
            "vertically_transitive": flags.vertically_transitive,
            "locally_trivial": flags.locally_trivial,
            "core_size": core_d.len(),
            "vertical_classes": classes.as_ref().map(|c| c.len()).unwrap_or(0),
        });
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    } else {
        println!(
            "points {}, horizontal arrows {}, vertical arrows {}, boxes {}",
            dg.n_points, dg.horiz.n_arrows, dg.vert.n_arrows, dg.n_boxes
        );
        println!("theta: {:?}", dg.theta_table());
        println!(
            "filling: {}, vacant: {}, transitivity (h/v/local): {}/{}/{}",
            dg.filling_condition(),
            dg.is_vacant(),
            flags.horizontally_transitive,
            flags.vertically_transitive,
            flags.locally_trivial
        );
        println!("core groupoids: {} elements each", core_d.len());
        debug_assert_eq!(core_d.len(), core_e.len());
        if let Ok(classes) = classes {
            let sizes: Vec<usize> = classes.iter().map(|c| c.class.len()).collect();
            println!("vertical classes: {sizes:?}");
        }
    }
    EXIT_OK
}
