//! `qsrigid`: command-line front end for quantum Schubert calculus, the
//! multiplicative eigenvalue polytope and rigid local systems.

mod render;
mod repro;

use anyhow::Context;
use clap::{Parser, Subcommand};
use qsrigid::alcove::{parse_rational, AlcovePoint, LineBundleData, Weight};
use qsrigid::classical::{
    hypergeom_exponents, hypergeom_katz_lower, hypergeom_unitary, pochhammer_exponents, pochhammer_unitary,
    HypergeomData, PochhammerData,
};
use qsrigid::divisors::{build_daj, divisor_class, passes_practical, rigid_from_face, CycleData, FaceData};
use qsrigid::fusion::{h0, verlinde_rank_rk, witten_rank};
use qsrigid::induction::{face_decompose, induce, LeviBundle};
use qsrigid::kz::{kz_exponents, kz_match_report, KzSystem};
use qsrigid::par::Exec;
use qsrigid::partitions::Partition;
use qsrigid::polytope::{
    certify_vertex, dd_vertex_enumeration, f_vertex_orbits, f_vertices_with, facets, membership, trivial_vertices,
};
use qsrigid::qschubert::{gw_generalized, quantum_product, GrassmannianRing, GwQuery, QClass};
use qsrigid::strangedual::{classify, galois_test, rigid_catalog, rigidity_numerics, v_of_a, ConjClassTuple};
use qsrigid::{Error, Rational};
use render::{q, qs, Format};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qsrigid", version, about = "Quantum Schubert calculus and unitary rigid local systems")]
struct Cli {
    /// Worker threads; 1 runs every scan sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Cap on the degree d in facet scans.
    #[arg(long, global = true, allow_negative_numbers = true)]
    d_max: Option<i64>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// JSON arguments may be given inline or as `@path`.
#[derive(Subcommand)]
enum Cmd {
    /// Generalized GW invariant ⟨σ_{I^1}, …, σ_{I^s}⟩_{d,D} on Gr(r,n).
    Gw {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        deg_shift: i64,
        /// Index sets, e.g. [[2,4],[2,4],[2,4],[2,4]].
        #[arg(long)]
        indices: String,
        /// Cross-check against the Verlinde evaluation.
        #[arg(long)]
        oracle: bool,
    },
    /// Quantum product σ_a ⋆ σ_b in QH*(Gr(r,n)).
    Qmul {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Rank of the sl_r conformal block bundle at level k.
    Fusion {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        weights: String,
    },
    /// h⁰ of a line bundle on the parabolic moduli space.
    H0 {
        #[arg(long)]
        bundle: String,
    },
    /// Divisor class of a codimension-one cycle.
    DivisorClass {
        #[arg(long)]
        cycle: String,
    },
    /// The cycle D(a,j) of a face and its line bundle.
    Daj {
        #[arg(long)]
        face: String,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        j: usize,
    },
    /// Conjugacy class tuple of the strange dual of D(a,j).
    RigidFromFace {
        #[arg(long)]
        face: String,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        j: usize,
    },
    /// Regular facets and alcove walls of P_n(s).
    Facets {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
    /// F-vertices of P_n(s) with certificates.
    Fvertices {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
        /// Group into orbits under central twists and point permutations.
        #[arg(long)]
        orbits: bool,
    },
    /// Membership of a tuple of alcove points in P_n(s).
    Member {
        /// e.g. [["1/2","0","0","-1/2"],…].
        #[arg(long)]
        point: String,
    },
    /// Double-description vertices compared with F-vertices and central tuples.
    PolytopeOracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
    /// Classification of a tuple of conjugacy classes of n-th roots of unity.
    Classify {
        /// Eigenvalue exponents per point, e.g. [[7,4,4,1],[7,4,4,1],[7,4,4,1]].
        #[arg(long)]
        classes: String,
        #[arg(long)]
        n: usize,
    },
    /// Orbit representatives of all unitary rigid local systems.
    Rigids {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
    /// Whether every Galois twist of a rigid unitary tuple stays rigid unitary.
    Galois {
        #[arg(long)]
        classes: String,
        #[arg(long)]
        n: usize,
    },
    /// Local exponents of a KZ system, e.g. {"r":2,"k":2,"weights":[[1,0],[1,0],[1,0]]}.
    KzExponents {
        #[arg(long)]
        system: String,
    },
    /// Twisted KZ local data against the strange dual of a cycle.
    KzMatch {
        #[arg(long)]
        cycle: String,
    },
    /// Hypergeometric unitarity, exponents and Katz lowering.
    Hypergeom {
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Lower repeatedly down to rank 1.
        #[arg(long)]
        lower: bool,
    },
    /// Pochhammer unitarity and exponents.
    Pochhammer {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
    },
    /// Basic rays, f2 part and coefficients of a bundle on a face.
    FaceDecompose {
        #[arg(long)]
        face: String,
        #[arg(long)]
        bundle: String,
    },
    /// Induction of a Levi bundle across a face.
    Induce {
        #[arg(long)]
        face: String,
        #[arg(long)]
        levi: String,
    },
    /// Replay a named example and compare with its golden file.
    Repro {
        /// One of: oldie, thaddeus, wilson, e1, rex.
        name: String,
        /// Overwrite the golden file instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

/// A failed comparison or cross-check; exits with status 1.
#[derive(Debug)]
pub struct Mismatch(pub String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Mismatch>() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(le) if le.is_internal() => 1,
        _ => 2,
    }
}

fn parse_json<T: DeserializeOwned>(what: &str, s: &str) -> anyhow::Result<T> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {what} from {path}"))?,
        None => s.to_string(),
    };
    serde_json::from_str(&text).with_context(|| format!("malformed {what} JSON"))
}

fn parse_list(s: &str) -> anyhow::Result<Vec<Rational>> {
    Ok(s.split(',').filter(|x| !x.trim().is_empty()).map(parse_rational).collect::<qsrigid::Result<_>>()?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightArg {
    Rows(Vec<i64>),
    Tagged(Weight),
}

impl WeightArg {
    fn weight(self) -> qsrigid::Result<Weight> {
        match self {
            WeightArg::Rows(r) => Weight::from_rows(&r),
            WeightArg::Tagged(w) => Ok(w),
        }
    }
}

fn weights(ws: Vec<WeightArg>) -> qsrigid::Result<Vec<Weight>> {
    ws.into_iter().map(WeightArg::weight).collect()
}

#[derive(Deserialize)]
struct BundleArg {
    n: usize,
    #[serde(rename = "degN", default)]
    deg_n: i64,
    level: i64,
    weights: Vec<WeightArg>,
}

impl BundleArg {
    fn bundle(self) -> qsrigid::Result<LineBundleData> {
        LineBundleData::new(self.n, self.deg_n, self.level, weights(self.weights)?)
    }
}

/// {"d":…, "r":…, "n":…, "D":…, "sets":[[…],…]}.
#[derive(Deserialize)]
struct CycleArg {
    d: i64,
    r: usize,
    n: usize,
    #[serde(rename = "D", default)]
    deg_shift: i64,
    sets: Vec<Vec<usize>>,
}

impl CycleArg {
    fn cycle(&self) -> qsrigid::Result<CycleData> {
        CycleData::from_sets(self.d, self.r, self.n, self.deg_shift, &self.sets)
    }

    fn face(&self) -> qsrigid::Result<FaceData> {
        FaceData::from_sets(self.d, self.r, self.n, self.deg_shift, &self.sets)
    }
}

#[derive(Deserialize)]
struct KzArg {
    r: usize,
    k: usize,
    weights: Vec<WeightArg>,
}

fn conj_classes(classes: &str, n: usize) -> anyhow::Result<ConjClassTuple> {
    let exps: Vec<Vec<usize>> = parse_json("classes", classes)?;
    let rank = exps.first().map_or(0, Vec::len);
    Ok(ConjClassTuple::from_exponents(rank, n, &exps)?)
}

fn hypergeom_report(h: &HypergeomData) -> Value {
    json!({
        "alpha": qs(&h.alpha),
        "beta": qs(&h.beta),
        "rank": h.rank(),
        "irreducible": h.irreducible(),
        "unitary": hypergeom_unitary(h),
        "exponents": render::exponent_table(&hypergeom_exponents(h)),
    })
}

fn run(cli: &Cli) -> anyhow::Result<Value> {
    let exec = if cli.threads == Some(1) { Exec::Sequential } else { Exec::Parallel };
    Ok(match &cli.cmd {
        Cmd::Gw { r, n, d, deg_shift, indices, oracle } => {
            let sets: Vec<Vec<usize>> = parse_json("indices", indices)?;
            let query = GwQuery::from_sets(*r, *n, *d, *deg_shift, &sets)?;
            let value = gw_generalized(&query)?;
            if *oracle {
                let w = witten_rank(&query)?;
                if w != value {
                    return Err(Error::disagree("gw_generalized vs witten_rank", value, w).into());
                }
            }
            json!(value)
        }
        Cmd::Qmul { r, n, a, b } => {
            let ring = GrassmannianRing::new(*r, *n)?;
            let pa: Partition = Partition::new(parse_json("partition a", a)?)?;
            let pb: Partition = Partition::new(parse_json("partition b", b)?)?;
            let prod = quantum_product(&QClass::schubert(ring, pa)?, &QClass::schubert(ring, pb)?)?;
            Value::Array(
                prod.terms
                    .iter()
                    .map(|((p, d), c)| json!({"partition": p, "q": d, "coeff": c}))
                    .collect(),
            )
        }
        Cmd::Fusion { r, k, weights: w } => {
            let ws = weights(parse_json("weights", w)?)?;
            json!(verlinde_rank_rk(*r, *k, &ws)?)
        }
        Cmd::H0 { bundle } => {
            let l = parse_json::<BundleArg>("bundle", bundle)?.bundle()?;
            json!(h0(&l)?)
        }
        Cmd::DivisorClass { cycle } => {
            let c = parse_json::<CycleArg>("cycle", cycle)?.cycle()?;
            let class = divisor_class(&c)?;
            json!({
                "level": class.level,
                "coeffs": class.coeffs,
                "bundle": render::bundle(&class.bundle),
                "practical": passes_practical(&c, &class.bundle),
            })
        }
        Cmd::Daj { face, a, j } => {
            let f = parse_json::<CycleArg>("face", face)?.face()?;
            let (c, l) = build_daj(&f, *a, *j)?;
            json!({"cycle": render::cycle(&c), "bundle": render::bundle(&l)})
        }
        Cmd::RigidFromFace { face, a, j } => {
            let f = parse_json::<CycleArg>("face", face)?.face()?;
            render::tuple(&rigid_from_face(&f, *a, *j)?)
        }
        Cmd::Facets { n, s } => Value::Array(facets(*n, *s, cli.d_max)?.iter().map(render::facet).collect()),
        Cmd::Fvertices { n, s, orbits } => {
            if *orbits {
                f_vertices_with(*n, *s, exec)?;
                let os = f_vertex_orbits(*n, *s)?;
                Value::Array(
                    os.iter()
                        .map(|o| {
                            json!({
                                "point": render::points(&o.representative.point),
                                "level": o.level(),
                                "size": o.size,
                                "bundle": render::bundle(&o.representative.bundle),
                            })
                        })
                        .collect(),
                )
            } else {
                Value::Array(
                    f_vertices_with(*n, *s, exec)?
                        .iter()
                        .map(|c| {
                            json!({
                                "point": render::points(&c.point),
                                "level": c.bundle.level,
                                "bundle": render::bundle(&c.bundle),
                                "witness": render::cycle(&c.witness_cycle),
                            })
                        })
                        .collect(),
                )
            }
        }
        Cmd::Member { point } => {
            let pts: Vec<AlcovePoint> = parse_json("point", point)?;
            let member = membership(&pts)?;
            let vertex = member && certify_vertex(&pts)?;
            json!({"member": member, "vertex": vertex})
        }
        Cmd::PolytopeOracle { n, s } => {
            let dd: BTreeSet<Vec<AlcovePoint>> = dd_vertex_enumeration(*n, *s)?.into_iter().collect();
            let mut expected = trivial_vertices(*n, *s);
            expected.extend(f_vertices_with(*n, *s, exec)?.iter().map(|c| c.point.clone()));
            if dd != expected {
                let extra: Vec<_> = dd.difference(&expected).map(|p| render::points(p)).collect();
                let missing: Vec<_> = expected.difference(&dd).map(|p| render::points(p)).collect();
                return Err(Mismatch(format!(
                    "double description vs F-vertices and central tuples: only DD {extra:?}, only F {missing:?}"
                ))
                .into());
            }
            json!({"n": n, "s": s, "vertices": dd.len(), "agree": true})
        }
        Cmd::Classify { classes, n } => {
            let a = conj_classes(classes, *n)?;
            let rep = classify(&a)?;
            let (lhs, rhs, bound) = rigidity_numerics(&a);
            json!({
                "input": render::tuple(&rep.input),
                "exists_unitary": rep.exists_unitary,
                "irreducible_forced": rep.irreducible_forced,
                "rigid_unitary": rep.rigid_unitary,
                "finite_monodromy": rep.finite_monodromy,
                "rigidity": [lhs, rhs, bound],
                "dual_bundle": render::bundle(&rep.dual_bundle),
                "point": render::points(&v_of_a(&a)?),
                "certificates": rep.certificates,
            })
        }
        Cmd::Rigids { n, s } => {
            f_vertices_with(*n, *s, exec)?;
            Value::Array(
                rigid_catalog(*n, *s, exec)?
                    .iter()
                    .map(|e| {
                        json!({
                            "tuple": render::tuple(&e.tuple),
                            "point": render::points(&e.point),
                            "orbit_size": e.orbit_size,
                            "finite_monodromy": e.finite_monodromy,
                            "property_p": e.property_p,
                        })
                    })
                    .collect(),
            )
        }
        Cmd::Galois { classes, n } => json!(galois_test(&conj_classes(classes, *n)?)?),
        Cmd::KzExponents { system } => {
            let arg: KzArg = parse_json("system", system)?;
            let sys = KzSystem::new(arg.r, arg.k, weights(arg.weights)?)?;
            json!({"rank": sys.rank, "exponents": render::exponent_table(&kz_exponents(&sys)?)})
        }
        Cmd::KzMatch { cycle } => {
            let c = parse_json::<CycleArg>("cycle", cycle)?.cycle()?;
            let rep = kz_match_report(&c)?;
            json!({
                "level": rep.level,
                "kz_rank": rep.kz_rank,
                "twist": rep.twist,
                "infinity_defect": q(&rep.infinity_defect),
                "points": rep.points.iter().map(|p| json!({
                    "kz": p.kz,
                    "dual": p.dual,
                    "multiplicity_identity": p.multiplicity_identity,
                })).collect::<Vec<_>>(),
                "matches": rep.matches(),
            })
        }
        Cmd::Hypergeom { alpha, beta, lower } => {
            let mut h = HypergeomData::new(parse_list(alpha)?, parse_list(beta)?)?;
            let mut chain = vec![hypergeom_report(&h)];
            if *lower {
                while h.rank() > 1 {
                    h = hypergeom_katz_lower(&h)?;
                    chain.push(hypergeom_report(&h));
                }
            }
            if chain.len() == 1 {
                chain.pop().expect("one report")
            } else {
                Value::Array(chain)
            }
        }
        Cmd::Pochhammer { lambda, rho } => {
            let rho = parse_rational(rho)?;
            let p = PochhammerData::new(parse_list(lambda)?, rho)?;
            json!({
                "rho_prime": q(&p.rho_prime()),
                "unitary": pochhammer_unitary(&p)?,
                "exponents": render::exponent_table(&pochhammer_exponents(&p)),
            })
        }
        Cmd::FaceDecompose { face, bundle } => {
            let f = parse_json::<CycleArg>("face", face)?.face()?;
            let l = parse_json::<BundleArg>("bundle", bundle)?.bundle()?;
            let dec = face_decompose(&l, &f)?;
            json!({
                "rays": dec.basic_rays.iter().zip(&dec.coefficients).map(|((a, j, b), c)| json!({
                    "a": a, "j": j, "coeff": q(c), "bundle": render::bundle(b),
                })).collect::<Vec<_>>(),
                "f2_part": render::bundle(&dec.f2_part),
            })
        }
        Cmd::Induce { face, levi } => {
            let f = parse_json::<CycleArg>("face", face)?.face()?;
            let lb: LeviBundle = parse_json("levi", levi)?;
            let b = induce(&lb, &f)?;
            let integral = b.to_line_bundle().ok().map(|l| render::bundle(&l));
            json!({"bundle": render::rational_bundle(&b), "integral": integral})
        }
        Cmd::Repro { name, bless } => repro::run(name, *bless)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        Some(t) if t > 1 => std::env::set_var("RAYON_NUM_THREADS", t.to_string()),
        _ => {}
    }
    match run(&cli) {
        Ok(v) => {
            println!("{}", render::render(&v, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let parse = parse_json::<Vec<Vec<usize>>>("indices", "[[2,4],").unwrap_err();
        assert_eq!(exit_code(&parse), 2);
        assert_eq!(exit_code(&anyhow::Error::from(Error::Invalid("x".into()))), 2);
        assert_eq!(exit_code(&anyhow::Error::from(Error::disagree("x", 1, 2))), 1);
        assert_eq!(exit_code(&Mismatch("x".into()).into()), 1);
    }

    #[test]
    fn rational_lists() {
        assert_eq!(parse_list("1/6, 5/6").unwrap(), vec![Rational::new(1, 6), Rational::new(5, 6)]);
        assert!(parse_list("1/0").is_err());
    }
}
