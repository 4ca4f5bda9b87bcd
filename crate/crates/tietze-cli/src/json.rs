//! JSON mirrors of the text blocks. Every block rendered to text can also
//! be emitted as a JSON object carrying the same data, keyed by `kind`.

use serde_json::{json, Value};
use tietze::calculus::{SegmentDirection, TietzeStep, TietzeTrace, TietzeZigzag};
use tietze::core::monoid::MonoidTable;
use tietze::core::morphism::Morphism;
use tietze::core::presentation::{Presentation, RelSet};
use tietze::core::word::Word;
use tietze::rewriting::derivation::{Derivation, Direction};
use tietze::rewriting::kb::RewriteSystem;
use tietze::rewriting::verdict::HomCertificate;

fn word_json(p: &Presentation, w: &Word) -> Value {
    Value::Array(
        w.letters()
            .map(|g| Value::String(p.gen_name(g).to_string()))
            .collect(),
    )
}

fn relset_json(p: &Presentation, rels: &RelSet, out: &mut Vec<Value>) {
    match rels {
        RelSet::Explicit(set) => {
            for rel in set {
                out.push(json!({
                    "lhs": word_json(p, &rel.lhs),
                    "rhs": word_json(p, &rel.rhs),
                }));
            }
        }
        RelSet::Diagonal => out.push(json!({"diagonal": true})),
        RelSet::Pullback { map, target } => {
            let map_json: Vec<Value> = map
                .iter()
                .map(|g| Value::String(target.gen_name(*g).to_string()))
                .collect();
            out.push(json!({
                "pullback": {
                    "map": map_json,
                    "target": presentation_json("target", target),
                }
            }));
        }
        RelSet::Union(parts) => {
            for part in parts {
                relset_json(p, part, out);
            }
        }
    }
}

pub fn presentation_json(name: &str, p: &Presentation) -> Value {
    let mut rels = Vec::new();
    relset_json(p, p.rels(), &mut rels);
    json!({
        "kind": "presentation",
        "name": name,
        "gens": p.gen_names(),
        "rels": rels,
        "reflexive": p.is_reflexive(),
    })
}

pub fn morphism_json(name: &str, from: &str, to: &str, m: &Morphism) -> Value {
    let map: Vec<Value> = m
        .src()
        .gen_ids()
        .map(|a| {
            json!({
                "from": m.src().gen_name(a),
                "to": m.tgt().gen_name(m.apply_gen(a)),
            })
        })
        .collect();
    json!({
        "kind": "morphism",
        "name": name,
        "from": from,
        "to": to,
        "map": map,
    })
}

pub fn derivation_json(name: &str, p: &Presentation, d: &Derivation) -> Value {
    let steps: Vec<Value> = d
        .steps
        .iter()
        .map(|s| {
            json!({
                "left": word_json(p, &s.left),
                "lhs": word_json(p, &s.relation.lhs),
                "rhs": word_json(p, &s.relation.rhs),
                "right": word_json(p, &s.right),
                "direction": match s.direction {
                    Direction::Forward => "fwd",
                    Direction::Backward => "bwd",
                },
            })
        })
        .collect();
    json!({
        "kind": "derivation",
        "name": name,
        "from": word_json(p, &d.start),
        "to": word_json(p, &d.end),
        "steps": steps,
    })
}

pub fn monoid_json(m: &MonoidTable) -> Value {
    json!({
        "kind": "monoid",
        "name": m.name,
        "size": m.size,
        "unit": m.unit,
        "elems": m.elems,
        "mul": m.mul,
    })
}

pub fn refutation_json(name: &str, p: &Presentation, cert: &HomCertificate) -> Value {
    let assign: Vec<Value> = p
        .gen_ids()
        .map(|a| {
            json!({
                "gen": p.gen_name(a),
                "element": cert.assignment[a.index()],
            })
        })
        .collect();
    json!({
        "kind": "refutation",
        "name": name,
        "size": cert.table.size,
        "unit": cert.table.unit,
        "mul": cert.table.mul,
        "assign": assign,
        "left": word_json(p, &cert.left),
        "right": word_json(p, &cert.right),
    })
}

fn step_json(p: &Presentation, step: &TietzeStep) -> Value {
    match step {
        TietzeStep::Tgen { word, fresh } => json!({
            "step": "tgen",
            "fresh": fresh,
            "word": word_json(p, word),
        }),
        TietzeStep::Trel { lhs, rhs, witness } => json!({
            "step": "trel",
            "lhs": word_json(p, lhs),
            "rhs": word_json(p, rhs),
            "witness": derivation_json("witness", p, witness),
        }),
        TietzeStep::Trefl { word } => json!({
            "step": "trefl",
            "word": word_json(p, word),
        }),
        TietzeStep::Tsym { relation } => json!({
            "step": "tsym",
            "lhs": word_json(p, &relation.lhs),
            "rhs": word_json(p, &relation.rhs),
        }),
        TietzeStep::Ttrans { first, second } => json!({
            "step": "ttrans",
            "first": {"lhs": word_json(p, &first.lhs), "rhs": word_json(p, &first.rhs)},
            "second": {"lhs": word_json(p, &second.lhs), "rhs": word_json(p, &second.rhs)},
        }),
        TietzeStep::Tctxt {
            relation,
            left,
            right,
        } => json!({
            "step": "tctxt",
            "lhs": word_json(p, &relation.lhs),
            "rhs": word_json(p, &relation.rhs),
            "left": word_json(p, left),
            "right": word_json(p, right),
        }),
    }
}

pub fn trace_json(from: &str, trace: &TietzeTrace) -> Value {
    let states = trace.intermediates().expect("stored traces replay");
    let steps: Vec<Value> = trace
        .steps()
        .iter()
        .enumerate()
        .map(|(i, s)| step_json(&states[i], s))
        .collect();
    json!({
        "kind": "trace",
        "from": from,
        "steps": steps,
    })
}

pub fn zigzag_json(from: &str, to: &str, z: &TietzeZigzag) -> Value {
    let segments: Vec<Value> = z
        .segments()
        .iter()
        .map(|(dir, trace)| {
            let states = trace.intermediates().expect("stored traces replay");
            let steps: Vec<Value> = trace
                .steps()
                .iter()
                .enumerate()
                .map(|(i, s)| step_json(&states[i], s))
                .collect();
            json!({
                "direction": match dir {
                    SegmentDirection::Forward => "forward",
                    SegmentDirection::Backward => "backward",
                },
                "steps": steps,
            })
        })
        .collect();
    json!({
        "kind": "zigzag",
        "from": from,
        "to": to,
        "segments": segments,
    })
}

pub fn rules_json(over: &str, p: &Presentation, system: &RewriteSystem) -> Value {
    let rules: Vec<Value> = system
        .rules()
        .iter()
        .map(|r| json!({"lhs": word_json(p, &r.lhs), "rhs": word_json(p, &r.rhs)}))
        .collect();
    json!({
        "kind": "rules",
        "for": over,
        "rules": rules,
        "convergent": system.is_convergent(),
    })
}
