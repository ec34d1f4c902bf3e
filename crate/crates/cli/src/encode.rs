//! JSON encodings. Rationals are `{num, den}` string pairs; there are no floats.

use ffdyn_core::arboreal::{FinIndexOutcome, LemmaU, RamCertificate, TowerRow, ZramReport};
use ffdyn_core::funcfield::{Frac, KPoly, Place, P1};
use ffdyn_core::heights::{HeightValue, Preperiodicity};
use ffdyn_core::ratmap::{CritLocation, CriticalPoint, ResiduePeriod};
use ffdyn_core::reduction::{NewtonPolygon, ReductionType, RootVal, Witness, WitnessData, WitnessReport};
use ffdyn_core::text::{format_frac, format_kpoly, format_place, format_point};
use ffdyn_core::zsigmondy::{SupportEntry, Truncation, ZsigmondyReport};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde_json::{json, Value};

pub fn frac(z: &Frac) -> Value {
    Value::String(format_frac(z))
}

pub fn point(z: &P1) -> Value {
    Value::String(format_point(z))
}

pub fn place(p: &Place) -> Value {
    Value::String(format_place(p))
}

pub fn places<'a>(ps: impl IntoIterator<Item = &'a Place>) -> Value {
    Value::Array(ps.into_iter().map(place).collect())
}

pub fn kpoly(f: &KPoly) -> Value {
    Value::String(format_kpoly(f, "x"))
}

pub fn rat(r: &Rational64) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

pub fn bigrat(r: &BigRational) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

pub fn int_rat(n: i64) -> Value {
    bigrat(&BigRational::from_integer(BigInt::from(n)))
}

pub fn root_val(v: &RootVal) -> Value {
    match v {
        None => Value::String("inf".into()),
        Some(r) => rat(r),
    }
}

pub fn height(h: &HeightValue) -> Value {
    json!({
        "value_num": h.value.numer().to_string(),
        "value_den": h.value.denom().to_string(),
        "err_num": h.error_bound.numer().to_string(),
        "err_den": h.error_bound.denom().to_string(),
        "n": h.n,
    })
}

pub fn preperiodicity(p: &Preperiodicity) -> Value {
    match p {
        Preperiodicity::Preperiodic { tail, cycle } => json!({"status": "preperiodic", "tail": tail, "cycle": cycle}),
        Preperiodicity::Wandering { n, height, constant } => {
            json!({"status": "wandering", "n": n, "height": height, "constant": constant})
        }
    }
}

pub fn crit_location(c: &CritLocation) -> Value {
    match c {
        CritLocation::Infinity => json!({"kind": "infinity"}),
        CritLocation::Rational(z) => json!({"kind": "rational", "point": frac(z)}),
        CritLocation::Class(g) => json!({"kind": "class", "poly": kpoly(g)}),
    }
}

pub fn critical_point(c: &CriticalPoint) -> Value {
    json!({"location": crit_location(&c.location), "ram_index": c.ram_index})
}

pub fn reduction(r: &ReductionType) -> Value {
    json!({
        "place": place(&r.place),
        "good": r.good,
        "shift": r.shift,
        "resultant_valuation": r.resultant_valuation,
        "reduced": r.reduced.as_ref().map(|m| m.format()),
    })
}

pub fn newton(np: &NewtonPolygon) -> Value {
    json!({
        "vertices": np.vertices.iter().map(|(i, v)| json!([i, v])).collect::<Vec<_>>(),
        "slopes": np.slopes.iter().map(|(s, l)| json!({"slope": rat(s), "length": l})).collect::<Vec<_>>(),
        "zero_roots": np.zero_roots,
    })
}

pub fn witness(w: &Witness) -> Value {
    let data = match &w.data {
        WitnessData::SlopeChain { center, valuations } => json!({
            "center": frac(center),
            "valuations": valuations.iter().map(root_val).collect::<Vec<_>>(),
        }),
        WitnessData::TwoClusters { near, far, profile } => json!({
            "near": rat(near),
            "far": rat(far),
            "profile": profile.iter().map(|(d, k)| json!({"distance": rat(d), "count": k})).collect::<Vec<_>>(),
        }),
    };
    json!({
        "n": w.n,
        "place": place(&w.place),
        "kind": w.kind(),
        "set_poly": kpoly(&w.set_poly),
        "data": data,
        "comparison": rat(&w.comparison),
        "comparison_integer": w.comparison_integer(),
    })
}

pub fn witness_report(r: &WitnessReport) -> Value {
    json!({
        "map": r.map.to_string(),
        "beta": frac(&r.beta),
        "n_max": r.n_max,
        "places": places(&r.places),
        "status": if r.witness.is_some() { "witness" } else { "none_found" },
        "witness": r.witness.as_ref().map(witness),
    })
}

fn entry(e: &SupportEntry) -> Value {
    json!({
        "n": e.n,
        "b_n": frac(&e.b_n),
        "primitive": e.has_primitive(),
        "support": e.support.iter().map(|f| json!({
            "place": place(&f.place),
            "v": f.valuation,
            "local_degree": f.local_degree,
            "primitive": f.primitive,
            "primitive_ell": f.primitive_ell.iter().map(|(l, b)| json!({"ell": l, "primitive": b})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn zsigmondy(r: &ZsigmondyReport) -> Value {
    let truncated = r.truncated.as_ref().map(|t| match t {
        Truncation::Degree { n, degree } => json!({"reason": "degree", "n": n, "degree": degree}),
        Truncation::BetaInOrbit { n } => json!({"reason": "beta_in_orbit", "n": n}),
    });
    json!({
        "map": r.map.to_string(),
        "alpha": frac(&r.alpha),
        "beta": frac(&r.beta),
        "ells": r.ells,
        "bound": r.bound,
        "entries": r.entries.iter().map(entry).collect::<Vec<_>>(),
        "z": r.z,
        "z_ell": r.z_ell.iter().map(|(l, z)| json!({"ell": l, "set": z})).collect::<Vec<_>>(),
        "hypotheses": {
            "beta_in_orbit": r.hypotheses.beta_in_orbit,
            "alpha_preperiodic": r.hypotheses.alpha_preperiodic,
            "constant_coefficients": r.hypotheses.constant_coefficients,
        },
        "truncated": truncated,
    })
}

pub fn lemma_u(u: &LemmaU) -> Value {
    json!({"certified": u.certified, "failures": u.failures, "disc_valuation": u.disc_valuation})
}

pub fn certificate(c: &RamCertificate) -> Value {
    json!({
        "place": place(&c.place),
        "n": c.n,
        "ell": c.ell,
        "e": c.e,
        "slope": rat(&c.slope),
        "length": c.length,
        "vertices": c.vertices.iter().map(|(i, v)| json!([i, v])).collect::<Vec<_>>(),
        "valuation": c.valuation,
    })
}

pub fn zram(r: &ZramReport) -> Value {
    json!({
        "ell": r.ell,
        "blocked": r.blocked,
        "rows": r.rows.iter().map(|row| json!({
            "n": row.n,
            "place": row.certificate.as_ref().map(|c| place(&c.place)),
            "certificate": row.certificate.as_ref().map(certificate),
            "lemma_u": row.lemma_u.as_ref().map(lemma_u),
            "candidates": places(&row.candidates),
        })).collect::<Vec<_>>(),
    })
}

pub fn tower(rows: &[TowerRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "certified_bound": r.certified_bound,
                    "polygon_bound": r.polygon_bound,
                    "polygon_place": r.polygon_place.as_ref().map(place),
                    "factor_degrees": r.factor_degrees,
                    "exact": r.exact,
                    "step_divisible": r.step_divisible,
                })
            })
            .collect(),
    )
}

pub fn finindex(out: &[FinIndexOutcome]) -> Value {
    Value::Array(
        out.iter()
            .map(|o| {
                json!({
                    "gamma": frac(&o.gamma),
                    "found": o.found.as_ref().map(place),
                    "probes": o.probes.iter().map(|p| json!({"place": place(&p.place), "failures": p.failures})).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn period(r: &Result<ResiduePeriod, String>) -> Value {
    match r {
        Ok(p) => json!({"tail": p.tail, "cycle": p.cycle}),
        Err(e) => json!({"error": e}),
    }
}
