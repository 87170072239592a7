//! Subcommands and their reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pctf_core::field::Coeff;
use pctf_core::homology::{homology, stabilize, ChainComplex, Verdict as TowerVerdict};
use pctf_core::monoid::DilationSequence;
use pctf_core::nerve::{delta_r_report, fixed_points, ncy_component, ncy_slice, subdivide, CyclicSlice};
use pctf_core::saturation::{
    conductor, is_normal, is_seminormal, normalize, seminormalize, seminormalize_pctf, Conductor, Reason,
};
use pctf_core::toric::{
    affine_weights, blowup_square, blowup_square_for, cech, closed_cover_square, conductor_square, sn_square,
    verify_l312, verify_square, weight_box, zariski_square, CdSquare, Fan, OmegaPresheaf, PositivityPresheaf, Site,
    SquareEntry,
};
use pctf_core::Vector;
use serde_json::{json, Value};

use crate::input::{canonical_fan, parse_any, parse_fan, parse_monoid, parse_vector, Parsed, ParsedFan, ParsedMonoid};
use crate::report::{coeff_name, parse_coeff, Report, Verdict};
use crate::CliError;

/// Exact computations on pointed monoids, cyclic nerves and toric squares.
///
/// Exit codes: 0 success, 1 a checked property is false, 2 invalid input or
/// options, 3 a budget or window ran out before a decision.
#[derive(Debug, Parser)]
#[command(name = "pctf", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Units, faces, primes, radicals and normality of a monoid.
    Analyze { monoid: PathBuf },
    /// Normalization, seminormalization and conductor.
    Saturate(SaturateArgs),
    /// Hochschild homology of one weight slice of the cyclic nerve.
    Hh(HhArgs),
    /// Homology along a dilation tower, compared with the closed form.
    Dilate(DilateArgs),
    /// Edgewise subdivision of a nerve component, or star subdivision of a fan.
    Subdivide(SubdivideArgs),
    /// Čech cohomology of G_m or of a weight component of Ω̃ on a fan.
    Cech(CechArgs),
    /// Check the Mayer-Vietoris property of a distinguished square.
    VerifySquare(SquareArgs),
    /// Compare Čech cohomology of G_m on a fan and on a refinement.
    VerifyL312(L312Args),
}

#[derive(Debug, Args)]
pub struct SaturateArgs {
    pub monoid: PathBuf,
    /// Initial closure window (degree); doubled until certified.
    #[arg(long)]
    pub window: Option<i64>,
}

#[derive(Debug, Args)]
pub struct HhArgs {
    pub monoid: PathBuf,
    /// Coefficients: q, z or fp:p.
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Degree of the slice for the grading given by the monoid.
    #[arg(long, conflicts_with = "element")]
    pub weight: Option<i64>,
    /// A single weight component, given as a vector.
    #[arg(long)]
    pub element: Option<String>,
    /// Simplices are generated through this degree; homology is valid below it.
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
}

#[derive(Debug, Args)]
pub struct DilateArgs {
    pub monoid: PathBuf,
    /// Dilation factors c_1,c_2,...
    #[arg(long, default_value = "2,2,2,2,2")]
    pub seq: String,
    /// The starting weight, as a vector.
    #[arg(long)]
    pub weight: String,
    #[arg(long, default_value_t = 2)]
    pub qmax: usize,
    #[arg(long, default_value = "fp:2")]
    pub field: String,
    /// Largest number of dilation steps.
    #[arg(long, default_value_t = 5)]
    pub kmax: usize,
}

#[derive(Debug, Args)]
pub struct SubdivideArgs {
    /// A monoid file (edgewise subdivision) or a fan file (star subdivision).
    pub input: PathBuf,
    /// Component weight for the edgewise subdivision.
    #[arg(long)]
    pub element: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// Ray for the star subdivision.
    #[arg(long)]
    pub ray: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresheafKind {
    Positivity,
    Omega,
}

#[derive(Debug, Args)]
pub struct CechArgs {
    pub fan: PathBuf,
    /// Dual vector m.
    #[arg(long, allow_hyphen_values = true)]
    pub m: String,
    #[arg(long, value_enum, default_value = "positivity")]
    pub presheaf: PresheafKind,
    /// Homological degree of the Ω̃ component.
    #[arg(long, default_value_t = 0)]
    pub q: usize,
    /// Restrict to the toric boundary.
    #[arg(long)]
    pub boundary: bool,
    #[arg(long, default_value = "q")]
    pub field: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Sn,
    Zariski,
    Conductor,
    ClosedCover,
    Blowup,
}

#[derive(Debug, Args)]
pub struct SquareArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Monoid file (sn, conductor, closed-cover) or fan file (zariski, blowup).
    pub input: PathBuf,
    /// Generator of the first ideal (closed-cover); repeatable.
    #[arg(long = "i", allow_hyphen_values = true)]
    pub ideal_i: Vec<String>,
    /// Generator of the second ideal (closed-cover); repeatable.
    #[arg(long = "j", allow_hyphen_values = true)]
    pub ideal_j: Vec<String>,
    /// Blow-up: ray of the star subdivision.
    #[arg(long, allow_hyphen_values = true)]
    pub ray: Option<String>,
    /// Blow-up: an explicit refinement instead of a ray.
    #[arg(long)]
    pub fine: Option<PathBuf>,
    /// Zariski: indices of maximal cones in the first open.
    #[arg(long, value_delimiter = ',')]
    pub u: Vec<usize>,
    /// Zariski: indices of maximal cones in the second open.
    #[arg(long, value_delimiter = ',')]
    pub v: Vec<usize>,
    /// Degree bound on weights of affine squares.
    #[arg(long, default_value_t = 8)]
    pub window: i64,
    /// Weights of toric squares range over [-box, box]^n.
    #[arg(long = "box", default_value_t = 3)]
    pub weight_box: i64,
    #[arg(long, default_value_t = 2)]
    pub qmax: usize,
    #[arg(long, default_value = "fp:2")]
    pub field: String,
}

#[derive(Debug, Args)]
pub struct L312Args {
    pub coarse: PathBuf,
    /// The refinement; omit to use --ray.
    pub fine: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub ray: Option<String>,
    /// A single dual vector; without it every m in the box is checked.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long = "box", default_value_t = 3)]
    pub weight_box: i64,
    #[arg(long, default_value = "q")]
    pub field: String,
}

fn opt<T>(name: &str, r: Result<T, String>) -> Result<T, CliError> {
    r.map_err(|message| CliError::Option { name: name.into(), message })
}

fn vector_opt(name: &str, s: &str, rank: usize) -> Result<Vector, CliError> {
    let v = opt(name, parse_vector(s))?;
    if v.len() != rank {
        return Err(CliError::Option { name: name.into(), message: format!("expected {rank} entries, got {}", v.len()) });
    }
    Ok(v)
}

fn monoid_input(p: &ParsedMonoid) -> Value {
    serde_json::to_value(&p.canonical).expect("serializable")
}

fn fan_input(p: &ParsedFan) -> Value {
    serde_json::to_value(&p.canonical).expect("serializable")
}

/// Evaluate `f` on chunks of `items` in parallel; results keep the order of
/// `items`.
fn par_chunks<T: Sync, R: Send>(items: &[T], f: impl Fn(&[T]) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len()).max(1);
    let size = items.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(size).map(|c| s.spawn(|| f(c))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Analyze { monoid } => analyze(&parse_monoid(monoid)?),
        Command::Saturate(a) => saturate(a),
        Command::Hh(a) => hh(a),
        Command::Dilate(a) => dilate(a),
        Command::Subdivide(a) => subdivide_cmd(a),
        Command::Cech(a) => cech_cmd(a),
        Command::VerifySquare(a) => square_cmd(a),
        Command::VerifyL312(a) => l312_cmd(a),
    }
}

fn analyze(p: &ParsedMonoid) -> Result<Report, CliError> {
    let a = &p.monoid;
    let c = a.carrier();
    let primes: Vec<Value> = a
        .primes()
        .iter()
        .map(|q| json!({ "face": q.face.generators, "generators": q.ideal.generators() }))
        .collect();
    let grading = a.grading().ok().map(|g| g.coefficients().to_vec());
    let results = json!({
        "name": p.name,
        "rank": a.rank(),
        "generators": c.generators(),
        "ideal": a.ideal().generators(),
        "units_rank": a.units().rank(),
        "sharp": c.is_sharp(),
        "cancellative": a.ideal().is_empty(),
        "reduced": a.is_reduced(),
        "normal": is_normal(c),
        "seminormal": is_seminormal(c),
        "faces": a.faces().len(),
        "primes": primes,
        "nilradical": a.nilradical().generators(),
        "grading": grading,
    });
    Ok(Report::new("analyze", vec![monoid_input(p)], json!({}), results, json!({}), Verdict::Ok))
}

fn reason_name(r: &Reason) -> String {
    match r {
        Reason::Input => "input".into(),
        Reason::Integral { k } => format!("integral:{k}"),
        Reason::SquareCube => "square-cube".into(),
        Reason::Face => "face".into(),
    }
}

fn saturate(args: &SaturateArgs) -> Result<Report, CliError> {
    let p = parse_monoid(&args.monoid)?;
    let c = p.monoid.carrier();
    let nor = normalize(c);
    let sn = match args.window {
        Some(w) if w < 1 => return Err(CliError::Option { name: "window".into(), message: "must be positive".into() }),
        Some(w) => {
            let mut w = w;
            let mut r = pctf_core::saturation::seminormalize_with_window(c, w);
            for _ in 0..8 {
                if r.certified {
                    break;
                }
                w *= 2;
                r = pctf_core::saturation::seminormalize_with_window(c, w);
            }
            r
        }
        None => seminormalize(c),
    };
    let pctf_sn = seminormalize_pctf(&p.monoid);
    let cond = match conductor(c, &nor.monoid) {
        Ok(r) => match r.conductor {
            Conductor::Whole => json!({ "whole": true, "window": r.window }),
            Conductor::Proper(i) => json!({ "generators": i.generators(), "window": r.window }),
        },
        Err(e) => json!({ "error": e.to_string() }),
    };
    let witnesses: Vec<Value> = sn
        .witnesses
        .iter()
        .map(|w| json!({ "element": w.element, "reason": reason_name(&w.reason) }))
        .collect();
    let results = json!({
        "normalization": nor.monoid.generators(),
        "seminormalization": {
            "generators": sn.monoid.generators(),
            "witnesses": witnesses,
            "certified": sn.certified,
        },
        "pctf_seminormalization": {
            "generators": pctf_sn.carrier().generators(),
            "ideal": pctf_sn.ideal().generators(),
        },
        "conductor": cond,
    });
    let verdict = if sn.certified { Verdict::Ok } else { Verdict::Inconclusive };
    let valid = json!({ "closure_window": sn.window });
    Ok(Report::new("saturate", vec![monoid_input(&p)], json!({ "window": args.window }), results, valid, verdict))
}

fn homology_json(c: &ChainComplex, coeff: Coeff, top_valid: usize) -> Result<Value, CliError> {
    let h = homology(c, coeff)?;
    let dims = h.dims_through(top_valid as i64);
    let mut out = json!({
        "coeff": coeff_name(coeff),
        "dims": dims,
        "valid_through": top_valid,
        "euler_chains": c.euler_characteristic(),
        "euler_homology": h.euler_characteristic(),
        "d_squared_zero": c.check_d_squared(),
    });
    if coeff == Coeff::Integers {
        let inv: Vec<Vec<String>> =
            h.torsion.iter().take(top_valid + 1).map(|t| t.iter().map(|d| d.to_string()).collect()).collect();
        out["invariant_factors"] = json!(inv);
    }
    Ok(out)
}

fn hh(args: &HhArgs) -> Result<Report, CliError> {
    let p = parse_monoid(&args.monoid)?;
    let coeff = opt("field", parse_coeff(&args.field))?;
    if args.max_degree == 0 {
        return Err(CliError::Option { name: "max-degree".into(), message: "must be at least 1".into() });
    }
    let (slice, weight): (CyclicSlice, Value) = match (&args.weight, &args.element) {
        (Some(w), None) => {
            let g = p.monoid.grading()?;
            (ncy_slice(&p.monoid, &g, *w, args.max_degree)?, json!(w))
        }
        (None, Some(e)) => {
            let v = vector_opt("element", e, p.monoid.rank())?;
            let x = p.monoid.element(&v)?;
            (ncy_component(&p.monoid, &x, args.max_degree)?, json!(v))
        }
        _ => return Err(CliError::Option { name: "weight".into(), message: "give --weight or --element".into() }),
    };
    let c = ChainComplex::from_slice(&slice);
    let mut results = homology_json(&c, coeff, args.max_degree - 1)?;
    results["weight"] = weight;
    results["simplices"] = json!(slice.counts());
    let options = json!({ "field": coeff_name(coeff), "weight": args.weight, "element": args.element, "max_degree": args.max_degree });
    let valid = json!({ "valid_through": args.max_degree - 1, "truncated_degree": args.max_degree });
    Ok(Report::new("hh", vec![monoid_input(&p)], options, results, valid, Verdict::Ok))
}

fn dilate(args: &DilateArgs) -> Result<Report, CliError> {
    let p = parse_monoid(&args.monoid)?;
    let coeff = opt("field", parse_coeff(&args.field))?;
    let factors = opt("seq", parse_vector(&args.seq))?;
    let seq = DilationSequence::new(factors.clone())?;
    let k = args.kmax.min(factors.len());
    let v = vector_opt("weight", &args.weight, p.monoid.rank())?;
    let x = p.monoid.element(&v)?;
    let r = stabilize(&p.monoid, &seq, &x, args.qmax, coeff, k)?;
    let (verdict, status, step) = match r.verdict {
        TowerVerdict::Converged { step } => (Verdict::Ok, "CONVERGED", Some(step)),
        TowerVerdict::Inconclusive => (Verdict::Inconclusive, "INCONCLUSIVE", None),
    };
    let results = json!({
        "status": status,
        "step": step,
        "stable_value": r.stable_value,
        "target": r.target,
        "weights": r.weights,
        "dims": r.dims,
        "theta_ranks": r.theta_ranks,
        "theta_isomorphisms": r.theta_isomorphisms,
        "comparison_ranks": r.comparison_ranks,
        "comparison_isomorphisms": r.comparison_isomorphisms,
    });
    let options = json!({ "seq": factors, "weight": v, "qmax": args.qmax, "field": coeff_name(coeff), "kmax": args.kmax });
    let valid = json!({ "valid_through": r.valid_through, "steps_used": k });
    Ok(Report::new("dilate", vec![monoid_input(&p)], options, results, valid, verdict))
}

fn subdivide_cmd(args: &SubdivideArgs) -> Result<Report, CliError> {
    match parse_any(&args.input)? {
        Parsed::Monoid(p) => {
            let e = args
                .element
                .as_ref()
                .ok_or_else(|| CliError::Option { name: "element".into(), message: "required for a monoid".into() })?;
            let v = vector_opt("element", e, p.monoid.rank())?;
            let x = p.monoid.element(&v)?;
            if args.r == 0 {
                return Err(CliError::Option { name: "r".into(), message: "must be positive".into() });
            }
            let rep = delta_r_report(&p.monoid, &x, args.r, args.max_degree)?;
            let s = ncy_component(&p.monoid, &x, args.max_degree)?;
            let sub = subdivide(&s, args.r)?;
            let fixed = fixed_points(&sub, args.r)?;
            let results = json!({
                "component_counts": s.counts(),
                "subdivided_counts": sub.counts(),
                "subdivided_base_nondegenerate": (0..=args.max_degree).map(|n| sub.base_nondegenerate_count(n)).collect::<Vec<_>>(),
                "fixed_counts": fixed.counts(),
                "delta": {
                    "source_counts": rep.source_counts,
                    "fixed_counts": rep.fixed_counts,
                    "injective": rep.injective,
                    "lands_in_fixed": rep.lands_in_fixed,
                    "faces_commute": rep.faces_commute,
                    "isomorphism": rep.is_isomorphism(),
                },
            });
            let options = json!({ "element": v, "r": args.r, "max_degree": args.max_degree });
            let valid = json!({ "through_degree": args.max_degree });
            Ok(Report::new("subdivide", vec![monoid_input(&p)], options, results, valid, Verdict::Ok))
        }
        Parsed::Fan(f) => {
            let ray = args
                .ray
                .as_ref()
                .ok_or_else(|| CliError::Option { name: "ray".into(), message: "required for a fan".into() })?;
            let v = vector_opt("ray", ray, f.fan.rank())?;
            let fine = f.fan.stellar_subdivide(&v)?;
            let results = json!({
                "fan": canonical_fan(&fine),
                "smooth_before": f.fan.is_smooth(),
                "smooth_after": fine.is_smooth(),
                "cones": fine.cones().len(),
            });
            Ok(Report::new("subdivide", vec![fan_input(&f)], json!({ "ray": v }), results, json!({}), Verdict::Ok))
        }
    }
}

fn cech_cmd(args: &CechArgs) -> Result<Report, CliError> {
    let f = parse_fan(&args.fan)?;
    let coeff = opt("field", parse_coeff(&args.field))?;
    let m = vector_opt("m", &args.m, f.fan.rank())?;
    let site = if args.boundary { Site::boundary(&f.fan) } else { Site::whole(&f.fan) };
    let dims = match args.presheaf {
        PresheafKind::Positivity => cech(&site, &PositivityPresheaf { m: m.clone() }, coeff)?,
        PresheafKind::Omega => cech(&site, &OmegaPresheaf { m: m.clone(), q: args.q }, coeff)?,
    };
    let presheaf = match args.presheaf {
        PresheafKind::Positivity => "positivity",
        PresheafKind::Omega => "omega",
    };
    let options = json!({ "m": m, "presheaf": presheaf, "q": args.q, "boundary": args.boundary, "field": coeff_name(coeff) });
    let results = json!({ "cohomology": dims, "cover": f.fan.maximal_cones().len() });
    Ok(Report::new("cech", vec![fan_input(&f)], options, results, json!({ "all_degrees": true }), Verdict::Ok))
}

fn entry_json(e: &SquareEntry) -> Value {
    json!({ "weight": e.weight, "q": e.q, "acyclic": e.acyclic, "corner_euler": e.corner_euler, "total": e.total_dims })
}

fn square_cmd(args: &SquareArgs) -> Result<Report, CliError> {
    let coeff = opt("field", parse_coeff(&args.field))?;
    let (sq, inputs, weights, window): (CdSquare, Vec<Value>, Vec<Vector>, Value) = match args.kind {
        KindArg::Sn | KindArg::Conductor | KindArg::ClosedCover => {
            let p = parse_monoid(&args.input)?;
            let sq = match args.kind {
                KindArg::Sn => sn_square(&p.monoid),
                KindArg::Conductor => {
                    if !p.monoid.ideal().is_empty() {
                        return Err(pctf_core::Error::ShapeMismatch("the monoid is not cancellative".into()).into());
                    }
                    conductor_square(p.monoid.carrier())?
                }
                _ => {
                    let rank = p.monoid.rank();
                    let i = args.ideal_i.iter().map(|s| vector_opt("i", s, rank)).collect::<Result<Vec<_>, _>>()?;
                    let j = args.ideal_j.iter().map(|s| vector_opt("j", s, rank)).collect::<Result<Vec<_>, _>>()?;
                    closed_cover_square(&p.monoid, &i, &j)?
                }
            };
            let w = affine_weights(&sq, args.window)?;
            (sq, vec![monoid_input(&p)], w, json!({ "degree_at_most": args.window }))
        }
        KindArg::Zariski | KindArg::Blowup => {
            let f = parse_fan(&args.input)?;
            let mut inputs = vec![fan_input(&f)];
            let sq = if args.kind == KindArg::Zariski {
                let max = f.fan.maximal_cones();
                let pick = |idx: &[usize], name: &str| -> Result<Vec<_>, CliError> {
                    idx.iter()
                        .map(|&i| {
                            max.get(i).cloned().ok_or_else(|| CliError::Option {
                                name: name.into(),
                                message: format!("no maximal cone {i}"),
                            })
                        })
                        .collect()
                };
                zariski_square(&f.fan, &pick(&args.u, "u")?, &pick(&args.v, "v")?)?
            } else if let Some(path) = &args.fine {
                let fine = parse_fan(path)?;
                inputs.push(fan_input(&fine));
                blowup_square_for(&f.fan, &fine.fan)?
            } else {
                let ray = args
                    .ray
                    .as_ref()
                    .ok_or_else(|| CliError::Option { name: "ray".into(), message: "give --ray or --fine".into() })?;
                blowup_square(&f.fan, &vector_opt("ray", ray, f.fan.rank())?)?
            };
            (sq, inputs, weight_box(f.fan.rank(), args.weight_box), json!({ "box": args.weight_box }))
        }
    };
    let parts = par_chunks(&weights, |chunk| verify_square(&sq, chunk, args.qmax, coeff));
    let mut entries = Vec::new();
    for p in parts {
        entries.extend(p?.entries);
    }
    let acyclic = entries.iter().all(|e| e.acyclic);
    let failures: Vec<Value> = entries.iter().filter(|e| !e.acyclic).map(entry_json).collect();
    let nonzero: Vec<Value> =
        entries.iter().filter(|e| e.corner_euler.iter().any(|&x| x != 0)).map(entry_json).collect();
    let kind = format!("{:?}", args.kind).to_lowercase();
    let results = json!({
        "kind": kind,
        "acyclic": acyclic,
        "checked": entries.len(),
        "weights": weights.len(),
        "failures": failures,
        "nonzero_entries": nonzero,
    });
    let options = json!({
        "kind": kind, "i": args.ideal_i, "j": args.ideal_j, "ray": args.ray, "u": args.u, "v": args.v,
        "window": args.window, "box": args.weight_box, "qmax": args.qmax, "field": coeff_name(coeff),
    });
    let valid = json!({ "weights": window, "q_at_most": args.qmax });
    let verdict = if acyclic { Verdict::Ok } else { Verdict::False };
    Ok(Report::new("verify-square", inputs, options, results, valid, verdict))
}

fn l312_cmd(args: &L312Args) -> Result<Report, CliError> {
    let coeff = opt("field", parse_coeff(&args.field))?;
    let coarse = parse_fan(&args.coarse)?;
    let mut inputs = vec![fan_input(&coarse)];
    let fine: Fan = match (&args.fine, &args.ray) {
        (Some(path), None) => {
            let f = parse_fan(path)?;
            inputs.push(fan_input(&f));
            f.fan
        }
        (None, Some(ray)) => coarse.fan.stellar_subdivide(&vector_opt("ray", ray, coarse.fan.rank())?)?,
        (None, None) => {
            // default: the blow-up at the sum of the rays of the first maximal cone
            let max = coarse.fan.maximal_cones();
            let first = max.first().ok_or_else(|| pctf_core::Error::InvalidFan("empty fan".into()))?;
            let mut v = vec![0; coarse.fan.rank()];
            for r in first.rays() {
                v = pctf_core::lattice::add(&v, r);
            }
            coarse.fan.stellar_subdivide(&v)?
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Option { name: "ray".into(), message: "give a refinement file or --ray, not both".into() })
        }
    };
    let ms: Vec<Vector> = match &args.m {
        Some(m) => vec![vector_opt("m", m, coarse.fan.rank())?],
        None => weight_box(coarse.fan.rank(), args.weight_box),
    };
    coarse.fan.check_refinement(&fine)?;
    let parts = par_chunks(&ms, |chunk| {
        chunk.iter().map(|m| verify_l312(&coarse.fan, &fine, m, coeff).map(|r| (m.clone(), r))).collect::<Vec<_>>()
    });
    let mut rows = Vec::new();
    let mut agree = true;
    for part in parts {
        for r in part {
            let (m, r) = r?;
            agree &= r.agree;
            rows.push(json!({ "m": m, "coarse": r.coarse, "fine": r.fine, "pullback_ranks": r.pullback_ranks, "agree": r.agree }));
        }
    }
    let results = json!({ "agree": agree, "refinement": canonical_fan(&fine), "checks": rows });
    let options = json!({ "m": args.m, "ray": args.ray, "box": args.weight_box, "field": coeff_name(coeff) });
    let valid = json!({ "all_degrees": true, "weights": ms.len() });
    let verdict = if agree { Verdict::Ok } else { Verdict::False };
    Ok(Report::new("verify-l312", inputs, options, results, valid, verdict))
}
