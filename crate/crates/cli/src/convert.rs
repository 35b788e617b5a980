//! JSON encodings of the library types. Complex numbers are `[re, im]`,
//! integers that may grow are decimal strings.

use num_bigint::BigInt;
use onemotive::curves::{Component, Coord, CurveConfiguration, DivisorTerm, MarkedPoint};
use onemotive::hodge::MixedHodgeStructure;
use onemotive::motives::OneMotive;
use onemotive::numeric::{CMat, C64};
use onemotive::report::Report;
use onemotive::zlinalg::{FiniteAbelianGroup, IntMatrix};
use onemotive::Config;
use serde_json::{json, Map, Value};

// Readers assume the document already passed `schema_validate`.

fn complex(v: &Value) -> C64 {
    C64::new(v[0].as_f64().unwrap_or(f64::NAN), v[1].as_f64().unwrap_or(f64::NAN))
}

fn cmat(v: &Value, rows: usize, cols: usize) -> CMat {
    let mut m = CMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex(&v[i][j]);
        }
    }
    m
}

fn count(v: &Value, key: &str) -> usize {
    v[key].as_u64().unwrap_or(0) as usize
}

pub fn motive_from_json(v: &Value, cfg: &Config) -> onemotive::Result<OneMotive> {
    let (r, t, g) = (count(v, "r"), count(v, "t"), count(v, "g"));
    OneMotive::from_data(r, t, cmat(&v["omega"], g, g), cmat(&v["eta"], t, 2 * g), cmat(&v["u_lift"], t + g, r), cfg)
}

fn coord(v: &Value) -> Coord {
    if v.as_str() == Some("inf") {
        Coord::Infinity
    } else {
        Coord::Finite(complex(v))
    }
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect()).unwrap_or_default()
}

pub fn curve_from_json(v: &Value, cfg: &Config) -> onemotive::Result<CurveConfiguration> {
    let empty = Vec::new();
    let components = v["components"]
        .as_array()
        .unwrap_or(&empty)
        .iter()
        .map(|c| Component {
            label: c["label"].as_str().unwrap_or_default().into(),
            genus: c["genus"].as_u64().unwrap_or(0) as u32,
            tau: c.get("tau").filter(|t| !t.is_null()).map(complex),
        })
        .collect();
    let points = v["points"]
        .as_array()
        .unwrap_or(&empty)
        .iter()
        .map(|p| MarkedPoint {
            label: p["label"].as_str().unwrap_or_default().into(),
            component: p["component"].as_str().unwrap_or_default().into(),
            coord: coord(&p["coord"]),
        })
        .collect();
    let gluings = v.get("gluings").and_then(Value::as_array).map(|a| a.iter().map(strings).collect()).unwrap_or_default();
    let deleted = v.get("deleted").map(strings).unwrap_or_default();
    CurveConfiguration::new(components, points, gluings, deleted, cfg)
}

pub fn divisor_from_json(v: &Value) -> Vec<DivisorTerm> {
    v.as_array()
        .map(|a| {
            a.iter()
                .map(|t| DivisorTerm {
                    component: t["component"].as_str().unwrap_or_default().into(),
                    coord: coord(&t["coord"]),
                    multiplicity: t["multiplicity"].as_i64().unwrap_or(0),
                })
                .collect()
        })
        .unwrap_or_default()
}

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_list_json(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| complex_json(z)).collect())
}

pub fn cmat_json(m: &CMat) -> Value {
    Value::Array((0..m.rows()).map(|i| complex_list_json(&m.row(i))).collect())
}

pub fn bigint_json(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn imat_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(bigint_json).collect())).collect())
}

pub fn motive_json(m: &OneMotive) -> Value {
    json!({
        "r": m.r(),
        "t": m.t(),
        "g": m.g(),
        "omega": cmat_json(m.omega()),
        "eta": cmat_json(m.eta()),
        "u_lift": cmat_json(m.u_lift()),
    })
}

pub fn report_json(r: &Report) -> Value {
    let details: Vec<Value> = r
        .details
        .iter()
        .map(|f| json!({"name": f.name, "status": f.status.as_str(), "message": f.message}))
        .collect();
    json!({"check": r.check, "status": r.status.as_str(), "details": details})
}

pub fn group_json(g: &FiniteAbelianGroup) -> Value {
    json!({
        "invariant_factors": g.invariant_factors.iter().map(bigint_json).collect::<Vec<_>>(),
        "free_rank": g.free_rank,
        "order": g.order().map(|o| bigint_json(&o)).unwrap_or(Value::Null),
    })
}

pub fn hodge_json(h: &MixedHodgeStructure) -> Value {
    let pol = h
        .polarization()
        .map(|p| json!({"lifts": imat_json(&p.lifts), "form": imat_json(&p.form)}))
        .unwrap_or(Value::Null);
    json!({
        "rank": h.rank(),
        "w2_basis": imat_json(h.w2()),
        "w1_basis": imat_json(h.w1()),
        "f0_basis": cmat_json(h.f0()),
        "polarization": pol,
    })
}

/// Rounds every float in `v` to `digits` significant digits.
pub fn round_floats(v: Value, digits: usize) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            let s = format!("{:.*e}", digits.saturating_sub(1), x);
            let y: f64 = s.parse().unwrap_or(x);
            // Integral floats stay floats so the shape of the output does not depend on the data.
            serde_json::Number::from_f64(if y == 0.0 { 0.0 } else { y }).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(|x| round_floats(x, digits)).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, x)| (k, round_floats(x, digits))).collect::<Map<_, _>>()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motive_round_trip() {
        let cfg = Config::default();
        let m = OneMotive::kummer(C64::new(7.0, 0.0)).unwrap();
        let back = motive_from_json(&motive_json(&m), &cfg).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rounding_is_to_significant_digits() {
        let v = round_floats(json!([1.234567890123456789, -0.0, 3.0e-20]), 4);
        assert_eq!(v, json!([1.235, 0.0, 3.0e-20]));
    }
}
