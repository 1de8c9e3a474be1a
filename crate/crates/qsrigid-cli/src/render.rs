//! JSON builders for library values and the json/tsv renderers.

use qsrigid::alcove::{fmt_rational, AlcovePoint, LineBundleData, Weight};
use qsrigid::divisors::{CycleData, FaceData};
use qsrigid::induction::RationalBundle;
use qsrigid::kz::LocalExponentTable;
use qsrigid::partitions::SchubertIndex;
use qsrigid::polytope::Facet;
use qsrigid::strangedual::ConjClassTuple;
use qsrigid::Rational;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

pub fn q(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

pub fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

pub fn sets(indices: &[SchubertIndex]) -> Value {
    json!(indices.iter().map(|i| &i.elems).collect::<Vec<_>>())
}

pub fn cycle(c: &CycleData) -> Value {
    json!({"d": c.d, "r": c.r, "n": c.n, "D": c.deg_shift, "sets": sets(&c.indices)})
}

pub fn face(f: &FaceData) -> Value {
    json!({"d": f.d, "r": f.r, "n": f.n, "D": f.deg_shift, "sets": sets(&f.indices)})
}

/// Fundamental coefficients of a weight.
pub fn weight(w: &Weight) -> Value {
    json!(w.fund())
}

pub fn bundle(l: &LineBundleData) -> Value {
    json!({
        "n": l.n,
        "degN": l.deg_n,
        "level": l.level,
        "weights": l.weights.iter().map(weight).collect::<Vec<_>>(),
    })
}

pub fn rational_bundle(b: &RationalBundle) -> Value {
    json!({
        "n": b.n,
        "level": q(&b.level),
        "weights": b.weights.iter().map(|w| qs(w)).collect::<Vec<_>>(),
    })
}

pub fn points(p: &[AlcovePoint]) -> Value {
    Value::Array(p.iter().map(|x| qs(&x.coords)).collect())
}

pub fn tuple(a: &ConjClassTuple) -> Value {
    json!({
        "rank": a.rank,
        "n": a.n,
        "exponents": (0..a.s()).map(|i| a.exponents(i)).collect::<Vec<_>>(),
    })
}

pub fn facet(f: &Facet) -> Value {
    match f {
        Facet::Regular { face: fd } => json!({"kind": "regular", "face": face(fd)}),
        Facet::Wall { point, k } => json!({"kind": "wall", "point": point, "k": k}),
    }
}

fn exps(t: &[(Rational, u64)]) -> Value {
    Value::Array(t.iter().map(|(e, m)| json!({"exponent": q(e), "mult": m})).collect())
}

pub fn exponent_table(t: &LocalExponentTable) -> Value {
    json!({
        "points": t.points.iter().map(|p| exps(p)).collect::<Vec<_>>(),
        "infinity": exps(&t.infinity),
    })
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable"),
        Format::Tsv => tsv(v),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn tsv(v: &Value) -> String {
    let mut out = Vec::new();
    match v {
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let keys: Vec<&String> = rows[0].as_object().expect("object").keys().collect();
            out.push(keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join("\t"));
            for row in rows {
                let m: &Map<String, Value> = row.as_object().expect("object");
                out.push(keys.iter().map(|k| m.get(*k).map_or(String::new(), cell)).collect::<Vec<_>>().join("\t"));
            }
        }
        Value::Array(rows) => out.extend(rows.iter().map(cell)),
        Value::Object(m) => out.extend(m.iter().map(|(k, x)| format!("{k}\t{}", cell(x)))),
        other => out.push(cell(other)),
    }
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_shapes() {
        assert_eq!(tsv(&json!(3)), "3");
        assert_eq!(tsv(&json!({"a": 1, "b": "1/2"})), "a\t1\nb\t1/2");
        assert_eq!(tsv(&json!([{"x": 1, "y": [1, 2]}, {"x": 2, "y": []}])), "x\ty\n1\t[1,2]\n2\t[]");
    }
}
