//! JSON rendering of core values.  The schema is versioned; the human text
//! on stderr is not stable.

use cohinv_core::embed::EmbedVerdict;
use cohinv_core::groups::{E8Desc, ProReplay, Spin16Desc};
use cohinv_core::milnor::{CohClass, Decomposition, Mod3Class};
use cohinv_core::pfister::PfisterForm;
use cohinv_core::rootsys::{KleinReport, QuadrupleReport};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn class_json(c: &CohClass) -> Value {
    let terms: Vec<Vec<String>> = c
        .terms()
        .map(|t| t.slots().iter().map(ToString::to_string).collect())
        .collect();
    json!({
        "degree": c.degree(),
        "terms": terms,
        "display": c.to_string(),
        "is_zero": c.is_zero(),
    })
}

pub fn mod3_json(c: &Mod3Class) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(slots, w)| {
            json!({
                "weight": w,
                "slots": slots.iter().map(ToString::to_string).collect::<Vec<String>>(),
            })
        })
        .collect();
    json!({
        "degree": c.degree(),
        "terms": terms,
        "display": c.to_string(),
        "is_zero": c.is_zero(),
    })
}

pub fn decomposition_json(d: &Decomposition, var: &str) -> Value {
    json!({
        "var": var,
        "tower": d.tower,
        "unramified": class_json(&d.unramified),
        "residue": class_json(&d.residue),
    })
}

pub fn pfister_json(p: &PfisterForm) -> Value {
    json!({
        "slots": p.slots().iter().map(ToString::to_string).collect::<Vec<String>>(),
        "fold": p.fold(),
        "dim": p.dim(),
        "display": p.to_string(),
    })
}

pub fn e8_json(g: &E8Desc) -> Value {
    let status = g.status();
    json!({
        "field": g.field().to_string(),
        "rost_mod2": class_json(g.rost_mod2()),
        "rost_mod3": mod3_json(g.rost_mod3()),
        "u": g.u().map(class_json),
        "status": status.status.to_string(),
        "reason": status.reason,
    })
}

pub fn spin16_json(eta: &Spin16Desc) -> Value {
    let presentation = match eta {
        Spin16Desc::Klein { .. } => "klein",
        Spin16Desc::Direct(_) => "direct",
    };
    let mut out = json!({
        "field": eta.field().to_string(),
        "presentation": presentation,
        "rost": class_json(&eta.rost()),
        "f4": class_json(&eta.f4().expect("f4 is defined for both presentations")),
        "f5": class_json(&eta.f5().expect("f5 is defined for both presentations")),
    });
    let obj = out.as_object_mut().expect("object");
    match (eta.u5(), eta.u6()) {
        (Ok(u5), Ok(u6)) => {
            obj.insert("u5".into(), class_json(&u5));
            obj.insert("u6".into(), class_json(&u6));
        }
        _ => {
            let note = json!({"unavailable": "presentation required"});
            obj.insert("u5".into(), note.clone());
            obj.insert("u6".into(), note);
        }
    }
    if let Ok(trivial) = eta.klein_image_trivial() {
        obj.insert("klein_image_trivial".into(), json!(trivial));
    }
    out
}

pub fn replay_json(r: &ProReplay) -> Value {
    json!({
        "lambda5": class_json(&r.lambda5),
        "lambda2": class_json(&r.lambda2),
        "lambda0": class_json(&r.lambda0),
        "steps": r.steps.iter().map(|s| json!({
            "name": s.name,
            "statement": s.statement,
            "verified": s.verified,
        })).collect::<Vec<Value>>(),
        "all_verified": r.steps.iter().all(|s| s.verified),
    })
}

pub fn quadruple_json(r: &QuadrupleReport) -> Value {
    json!({
        "in_lattice": r.in_lattice,
        "gram": r.gram,
        "orthogonal": r.orthogonal,
        "degenerate": r.degenerate,
    })
}

pub fn klein_json(r: &KleinReport) -> Value {
    json!({
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "detail": c.detail,
        })).collect::<Vec<Value>>(),
        "all_pass": r.all_pass,
    })
}

pub fn embed_json(v: &EmbedVerdict) -> Value {
    json!({
        "answer": v.answer,
        "reasons": v.reasons.iter().map(|r| json!({
            "requirement": r.requirement,
            "satisfied": r.satisfied,
        })).collect::<Vec<Value>>(),
    })
}

pub fn envelope(command: &str, ok: bool, result: Value) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "ok": ok,
        "result": result,
    })
}

pub fn error_envelope(message: &str) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "ok": false,
        "error": message,
    })
}
