//! JSON emission and parsing. Rationals travel as strings in lowest terms,
//! `"num/den"` with a positive denominator, integers without `/1`.

use hs6v_core::boundary::{BoundaryParams, KMatrix, NMatrix};
use hs6v_core::lattice::{BlockTensor, Weight};
use hs6v_core::linalg::Matrix;
use hs6v_core::verify::Report;
use hs6v_core::Scalar;
use serde_json::{json, Map, Value};

use crate::runner::SuiteRun;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("missing or mistyped field `{0}`")]
    Field(&'static str),
    #[error("bad rational {0:?}")]
    Scalar(String),
    #[error(transparent)]
    Core(#[from] hs6v_core::Error),
}

pub fn text(s: &Scalar) -> String {
    s.to_string()
}

pub fn parse_scalar(v: &Value) -> Result<Scalar, JsonError> {
    let s = v.as_str().ok_or(JsonError::Field("rational"))?;
    s.parse().map_err(|_| JsonError::Scalar(s.to_string()))
}

/// Tensor on `V_I ⊗ V_J`; entries off the conserving blocks are omitted.
pub fn tensor_json(t: &BlockTensor, h: &Scalar, lambda: &Scalar) -> Value {
    let (i_w, j_w) = t.weights();
    let entries: Vec<Value> = t
        .iter()
        .filter(|([i, j, ip, jp], _)| i + j == ip + jp)
        .map(|(idx, v)| json!({ "idx": idx, "val": text(v) }))
        .collect();
    json!({
        "weights": [i_w.get(), j_w.get()],
        "lambda": text(lambda),
        "h": text(h),
        "entries": entries,
    })
}

/// Inverse of [`tensor_json`].
pub fn tensor_from_json(v: &Value) -> Result<BlockTensor, JsonError> {
    let w = v["weights"].as_array().ok_or(JsonError::Field("weights"))?;
    let weight = |k: usize| -> Result<Weight, JsonError> {
        let n = w.get(k).and_then(Value::as_u64).ok_or(JsonError::Field("weights"))?;
        Ok(Weight::new(u32::try_from(n).map_err(|_| JsonError::Field("weights"))?)?)
    };
    let (i_w, j_w) = (weight(0)?, weight(1)?);
    let mut values = std::collections::HashMap::new();
    for e in v["entries"].as_array().ok_or(JsonError::Field("entries"))? {
        let idx: Vec<usize> = e["idx"]
            .as_array()
            .ok_or(JsonError::Field("idx"))?
            .iter()
            .map(|x| x.as_u64().map(|n| n as usize).ok_or(JsonError::Field("idx")))
            .collect::<Result<_, _>>()?;
        let key: [usize; 4] = idx.try_into().map_err(|_| JsonError::Field("idx"))?;
        values.insert(key, parse_scalar(&e["val"])?);
    }
    Ok(BlockTensor::try_from_fn(i_w, j_w, |i, j, ip, jp| {
        Ok(values.get(&[i, j, ip, jp]).cloned().unwrap_or_else(Scalar::zero))
    })?)
}

fn rows_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|v| Value::String(text(v))).collect())).collect(),
    )
}

fn rows_from_json(v: &Value) -> Result<Matrix, JsonError> {
    let rows = v.as_array().ok_or(JsonError::Field("entries"))?;
    let parsed: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array().ok_or(JsonError::Field("entries"))?.iter().map(parse_scalar).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let n = parsed.len();
    if parsed.iter().any(|r| r.len() != n) {
        return Err(JsonError::Field("entries"));
    }
    Ok(Matrix::from_fn(n, n, |r, c| parsed[r][c].clone()))
}

pub fn params_json(p: &BoundaryParams) -> Value {
    let mut m = Map::new();
    m.insert("h".into(), text(&p.h).into());
    m.insert("y".into(), text(&p.y).into());
    if let Some(t) = &p.t {
        m.insert("t".into(), text(t).into());
    }
    m.insert("t_plus".into(), text(&p.t_plus).into());
    m.insert("t_minus".into(), text(&p.t_minus).into());
    m.insert("nu".into(), text(&p.nu).into());
    m.insert("mu".into(), text(&p.mu).into());
    Value::Object(m)
}

/// K-matrix, rows indexed by `j`.
pub fn kmatrix_json(k: &KMatrix, p: &BoundaryParams) -> Value {
    json!({ "spin": k.spin().get(), "params": params_json(p), "entries": rows_json(k.matrix()) })
}

pub fn kmatrix_from_json(v: &Value) -> Result<KMatrix, JsonError> {
    let spin = v["spin"].as_u64().ok_or(JsonError::Field("spin"))?;
    let spin = Weight::new(u32::try_from(spin).map_err(|_| JsonError::Field("spin"))?)?;
    Ok(KMatrix::new(spin, rows_from_json(&v["entries"])?)?)
}

pub fn nmatrix_json(n: &NMatrix, p: &BoundaryParams) -> Value {
    json!({ "spin": n.spin().get(), "params": params_json(p), "entries": rows_json(n.matrix()) })
}

fn trial_json(r: &Report) -> Value {
    let params: Map<String, Value> = r.draw.params.iter().map(|(k, v)| (k.clone(), text(v).into())).collect();
    let mut t = json!({
        "id": r.draw.trial,
        "identity": r.identity,
        "status": r.status.as_str(),
        "residual": text(&r.max_abs_residual),
        "params": params,
        "ms": r.millis,
        "rejections": r.draw.rejections,
    });
    if r.exploratory {
        t["exploratory"] = true.into();
    }
    if !r.draw.rejection_reasons.is_empty() {
        t["rejection_reasons"] = r.draw.rejection_reasons.clone().into();
    }
    t
}

pub fn suite_json(run: &SuiteRun) -> Value {
    let s = run.summary();
    json!({
        "suite": run.suite.id(),
        "seed": run.seed,
        "trials": run.reports.iter().map(trial_json).collect::<Vec<_>>(),
        "summary": {
            "pass": s.pass,
            "fail": s.fail,
            "singular": s.singular,
            "exploratory_fail": s.exploratory_fail,
            "rejections": s.rejections,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hs6v_core::boundary::KRoute;
    use hs6v_core::lattice::{build_s, ModelParams};

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn canonical_text() {
        assert_eq!(text(&s(6, -16)), "-3/8");
        assert_eq!(text(&s(-4, 2)), "-2");
        assert_eq!(text(&Scalar::zero()), "0");
    }

    #[test]
    fn tensor_round_trip() {
        let p = ModelParams::new(s(1, 2), s(3, 2)).unwrap();
        let t = build_s(Weight::new(2).unwrap(), Weight::new(1).unwrap(), &p).unwrap();
        let v = tensor_json(&t, &p.h, &p.lambda);
        let back = tensor_from_json(&serde_json::from_str(&v.to_string()).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn kmatrix_round_trip() {
        let p = BoundaryParams::from_t(s(1, 2), s(3, 2), s(2, 3), Scalar::one(), s(1, 5)).unwrap();
        let k = hs6v_core::boundary::build_k(KRoute::Closed, Weight::new(2).unwrap(), &p).unwrap();
        let v = kmatrix_json(&k, &p);
        assert_eq!(v["params"]["t"], "2/3");
        let back = kmatrix_from_json(&serde_json::from_str(&v.to_string()).unwrap()).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn rejects_malformed_rationals() {
        assert!(parse_scalar(&json!("1/0")).is_err());
        assert!(parse_scalar(&json!("x")).is_err());
        assert!(parse_scalar(&json!(3)).is_err());
    }
}
