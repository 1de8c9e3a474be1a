//! Named worked examples replayed end to end and compared with golden files.

use crate::render::{self, q};
use crate::Mismatch;
use anyhow::Context;
use qsrigid::classical::{hypergeom_katz_lower, hypergeom_unitary, HypergeomData};
use qsrigid::divisors::{build_daj, divisor_class, passes_practical, CycleData, FaceData};
use qsrigid::fusion::h0;
use qsrigid::induction::{face_decompose, induce, LeviBundle, LeviSide};
use qsrigid::kz::kz_match_report;
use qsrigid::qschubert::{gw_invariant, GwQuery};
use qsrigid::strangedual::{classify, from_bundle, rigidity_numerics};
use qsrigid::Result;
use serde_json::{json, Value};
use std::path::PathBuf;

pub const NAMES: [&str; 5] = ["oldie", "thaddeus", "wilson", "e1", "rex"];

/// QSRIGID_GOLDEN_DIR overrides the in-repo fixture directory.
pub fn golden_dir() -> PathBuf {
    std::env::var_os("QSRIGID_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/golden")))
}

fn strange_dual(l: &qsrigid::alcove::LineBundleData) -> Result<Value> {
    let a = from_bundle(l)?;
    let rep = classify(&a)?;
    let (lhs, rhs, bound) = rigidity_numerics(&a);
    Ok(json!({
        "tuple": render::tuple(&a),
        "rigidity": [lhs, rhs, bound],
        "rigid_unitary": rep.rigid_unitary,
        "finite_monodromy": rep.finite_monodromy,
    }))
}

fn divisor(c: &CycleData) -> Result<Value> {
    let class = divisor_class(c)?;
    let kz = kz_match_report(c)?;
    Ok(json!({
        "cycle": render::cycle(c),
        "bundle": render::bundle(&class.bundle),
        "kappa": render::points(&class.bundle.kappa_points()?),
        "practical": passes_practical(c, &class.bundle),
        "h0": h0(&class.bundle)?,
        "kz_rank": kz.kz_rank,
        "kz_match": kz.matches(),
        "dual": strange_dual(&class.bundle)?,
    }))
}

fn daj(f: &FaceData, a: usize, j: usize) -> Result<Value> {
    let (c, l) = build_daj(f, a, j)?;
    Ok(json!({
        "a": a,
        "j": j,
        "cycle": render::cycle(&c),
        "bundle": render::bundle(&l),
        "kappa": render::points(&l.kappa_points()?),
        "h0": h0(&l)?,
        "dual": strange_dual(&l)?,
    }))
}

fn oldie() -> Result<Value> {
    let lines = GwQuery::from_sets(2, 4, 0, 0, &[[2, 4]; 4])?;
    let face = FaceData::from_sets(1, 2, 4, 0, &[&[1, 4][..], &[1, 3], &[1, 3]])?;
    Ok(json!({
        "gw_lines": gw_invariant(&lines)?,
        "gw_face": gw_invariant(&face.query())?,
        "divisor": divisor(&CycleData::from_sets(1, 2, 4, 0, &[[1, 3]; 3])?)?,
        "daj": daj(&face, 4, 1)?,
    }))
}

fn thaddeus() -> Result<Value> {
    let face = FaceData::from_sets(2, 4, 8, 0, &[[2, 3, 4, 7], [1, 3, 4, 7], [1, 3, 4, 7]])?;
    Ok(json!({
        "gw_face": gw_invariant(&face.query())?,
        "daj": daj(&face, 2, 1)?,
        "divisor": divisor(&CycleData::from_sets(2, 4, 8, 0, &[[1, 3, 4, 7]; 3])?)?,
    }))
}

fn wilson() -> Result<Value> {
    divisor(&CycleData::from_sets(0, 3, 9, 0, &[&[2, 6, 9][..], &[3, 6, 9], &[3, 6, 9]])?)
}

fn e1() -> Result<Value> {
    let mut h = HypergeomData::from_eigenvalues(8, &[7, 3, 1], &[6, 4, 0])?;
    let mut chain = Vec::new();
    loop {
        chain.push(json!({
            "alpha": render::qs(&h.alpha),
            "beta": render::qs(&h.beta),
            "unitary": hypergeom_unitary(&h),
        }));
        if h.rank() == 1 {
            break;
        }
        h = hypergeom_katz_lower(&h)?;
    }
    Ok(Value::Array(chain))
}

fn rex() -> Result<Value> {
    let face = FaceData::from_sets(0, 3, 9, 0, &[[3, 7, 8], [3, 6, 9], [3, 6, 9]])?;
    let levi = LeviBundle {
        sub: LeviSide { rank: 3, deg_n: 0, level: 1, weights: vec![vec![1, 1, 0]; 3] },
        quot: LeviSide::trivial(6, 0, 3),
    };
    let induced = induce(&levi, &face)?.to_line_bundle()?;
    let dec = face_decompose(&induced, &face)?;
    Ok(json!({
        "face": render::face(&face),
        "induced": render::bundle(&induced),
        "coefficients": dec.coefficients.iter().map(q).collect::<Vec<_>>(),
        "f2_part": render::bundle(&dec.f2_part),
    }))
}

pub fn compute(name: &str) -> anyhow::Result<Value> {
    Ok(match name {
        "oldie" => oldie()?,
        "thaddeus" => thaddeus()?,
        "wilson" => wilson()?,
        "e1" => e1()?,
        "rex" => rex()?,
        other => anyhow::bail!("unknown example {other:?}; known: {}", NAMES.join(", ")),
    })
}

pub fn run(name: &str, bless: bool) -> anyhow::Result<Value> {
    let got = compute(name)?;
    let path = golden_dir().join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(&got)? + "\n";
    if bless {
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        return Ok(json!({"example": name, "blessed": path.display().to_string()}));
    }
    let golden = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    if golden != text {
        return Err(Mismatch(format!("{name} differs from {}:\n{text}", path.display())).into());
    }
    Ok(json!({"example": name, "golden": "match"}))
}
