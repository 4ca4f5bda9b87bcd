//! Loading and resolving named values from block files.
//!
//! Presentations with pullback relation sets reference morphisms by name
//! while those morphisms start at the presentation being defined, so
//! presentations are resolved to a fixed point: a pullback part is built
//! from the raw morphism's generator pairs once its target exists.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use tietze::calculus::{SegmentDirection, TietzeStep, TietzeTrace, TietzeZigzag};
use tietze::core::monoid::MonoidTable;
use tietze::core::morphism::Morphism;
use tietze::core::presentation::{Presentation, RelSet, Relation};
use tietze::core::word::GenId;
use tietze::text::{
    parse_blocks, resolve_derivation, resolve_word, RawBlock, RawDerivation, RawMorphism,
    RawPresentation, RawRefutation, RawRelPart, RawRules, RawTietzeStep, RawTrace, RawZigzag,
};

/// A workspace error: either a parse failure with its position or a
/// resolution failure.
#[derive(Debug)]
pub enum WsError {
    Parse {
        file: String,
        line: usize,
        col: usize,
        msg: String,
    },
    Resolve(String),
}

impl std::fmt::Display for WsError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WsError::Parse {
                file,
                line,
                col,
                msg,
            } => write!(f, "{file}:{line}:{col}: {msg}"),
            WsError::Resolve(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for WsError {}

pub type WsResult<T> = Result<T, WsError>;

fn resolve_err<T>(msg: impl Into<String>) -> WsResult<T> {
    Err(WsError::Resolve(msg.into()))
}

#[derive(Default)]
pub struct Workspace {
    pub presentations: BTreeMap<String, Arc<Presentation>>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub monoids: BTreeMap<String, MonoidTable>,
    pub derivations: BTreeMap<String, RawDerivation>,
    pub traces: Vec<RawTrace>,
    pub zigzags: Vec<RawZigzag>,
    pub rules: Vec<RawRules>,
    pub refutations: Vec<RawRefutation>,
}

impl Workspace {
    pub fn load(paths: &[String]) -> WsResult<Workspace> {
        let mut raw_presentations: Vec<RawPresentation> = Vec::new();
        let mut raw_morphisms: Vec<RawMorphism> = Vec::new();
        let mut ws = Workspace::default();
        for path in paths {
            let text = std::fs::read_to_string(Path::new(path)).map_err(|e| {
                WsError::Resolve(format!("cannot read {path}: {e}"))
            })?;
            let blocks = parse_blocks(&text).map_err(|e| WsError::Parse {
                file: path.clone(),
                line: e.line,
                col: e.col,
                msg: e.msg,
            })?;
            for block in blocks {
                match block {
                    RawBlock::Presentation(p) => raw_presentations.push(p),
                    RawBlock::Morphism(m) => raw_morphisms.push(m),
                    RawBlock::Derivation(d) => {
                        if ws.derivations.insert(d.name.clone(), d).is_some() {
                            return resolve_err("duplicate derivation name");
                        }
                    }
                    RawBlock::Monoid(m) => {
                        let elems = m.elems.clone();
                        let mut table = MonoidTable::new(m.name.clone(), m.unit, m.mul)
                            .map_err(|e| WsError::Resolve(format!("monoid {}: {e}", m.name)))?;
                        if let Some(elems) = elems {
                            table = table
                                .with_elems(elems)
                                .map_err(|e| WsError::Resolve(format!("monoid {}: {e}", m.name)))?;
                        }
                        if ws.monoids.insert(m.name.clone(), table).is_some() {
                            return resolve_err("duplicate monoid name");
                        }
                    }
                    RawBlock::Trace(t) => ws.traces.push(t),
                    RawBlock::Zigzag(z) => ws.zigzags.push(z),
                    RawBlock::Rules(r) => ws.rules.push(r),
                    RawBlock::Refutation(r) => ws.refutations.push(r),
                }
            }
        }
        // Resolve presentations to a fixed point (pullback parts need their
        // target presentation and defining raw morphism).
        let mut pending = raw_presentations;
        loop {
            let mut progressed = false;
            let mut still_pending = Vec::new();
            for raw in pending {
                match build_presentation(&raw, &ws, &raw_morphisms) {
                    Ok(Some(p)) => {
                        if ws
                            .presentations
                            .insert(raw.name.clone(), Arc::new(p))
                            .is_some()
                        {
                            return resolve_err(format!("duplicate presentation {}", raw.name));
                        }
                        progressed = true;
                    }
                    Ok(None) => still_pending.push(raw),
                    Err(e) => return Err(e),
                }
            }
            if still_pending.is_empty() {
                break;
            }
            if !progressed {
                return resolve_err(format!(
                    "unresolvable pullback references in presentation {}",
                    still_pending[0].name
                ));
            }
            pending = still_pending;
        }
        for raw in &raw_morphisms {
            let m = build_morphism(raw, &ws)?;
            if ws.morphisms.insert(raw.name.clone(), m).is_some() {
                return resolve_err(format!("duplicate morphism {}", raw.name));
            }
        }
        Ok(ws)
    }

    pub fn presentation(&self, name: Option<&str>) -> WsResult<&Arc<Presentation>> {
        match name {
            Some(n) => self
                .presentations
                .get(n)
                .ok_or_else(|| WsError::Resolve(format!("no presentation named {n}"))),
            None => {
                if self.presentations.len() == 1 {
                    Ok(self.presentations.values().next().expect("one"))
                } else {
                    resolve_err(format!(
                        "expected exactly one presentation, found {}; name one",
                        self.presentations.len()
                    ))
                }
            }
        }
    }

    pub fn presentation_name(&self, p: &Arc<Presentation>) -> String {
        self.presentations
            .iter()
            .find(|(_, q)| Arc::ptr_eq(p, q) || **q == *p)
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| "p".to_string())
    }

    /// Names of loaded morphisms realizing the pullback parts of `p`, in
    /// the order rendering visits them.
    pub fn pullback_names(&self, p: &Arc<Presentation>) -> Vec<String> {
        fn collect(rels: &RelSet, out: &mut Vec<(Vec<GenId>, Arc<Presentation>)>) {
            match rels {
                RelSet::Pullback { map, target } => out.push((map.clone(), target.clone())),
                RelSet::Union(parts) => {
                    for part in parts {
                        collect(part, out);
                    }
                }
                _ => {}
            }
        }
        let mut parts = Vec::new();
        collect(p.rels(), &mut parts);
        parts
            .into_iter()
            .map(|(map, target)| {
                self.morphisms
                    .iter()
                    .find(|(_, m)| {
                        m.src() == p && m.map() == &map[..] && *m.tgt() == target
                    })
                    .map(|(name, _)| name.clone())
                    .unwrap_or_else(|| "q".to_string())
            })
            .collect()
    }

    /// Witness derivation names referenced by loaded traces and zig-zags;
    /// those derivations are re-emitted by the trace renderers under fresh
    /// names, so a re-render must not duplicate them.
    pub fn referenced_witnesses(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        let mut scan = |steps: &[RawTietzeStep]| {
            for step in steps {
                if let RawTietzeStep::Trel { witness, .. } = step {
                    out.insert(witness.clone());
                }
            }
        };
        for t in &self.traces {
            scan(&t.steps);
        }
        for z in &self.zigzags {
            for (_, steps) in &z.segments {
                scan(steps);
            }
        }
        out
    }

    pub fn morphism(&self, name: Option<&str>) -> WsResult<&Morphism> {
        match name {
            Some(n) => self
                .morphisms
                .get(n)
                .ok_or_else(|| WsError::Resolve(format!("no morphism named {n}"))),
            None => {
                if self.morphisms.len() == 1 {
                    Ok(self.morphisms.values().next().expect("one"))
                } else {
                    resolve_err(format!(
                        "expected exactly one morphism, found {}; name one",
                        self.morphisms.len()
                    ))
                }
            }
        }
    }

    /// Resolves a trace: steps are parsed against the evolving
    /// intermediate presentation, witnesses against the state they apply
    /// to.
    pub fn resolve_trace(&self, raw: &RawTrace) -> WsResult<TietzeTrace> {
        let start = self.presentation(Some(&raw.from))?.clone();
        let mut steps = Vec::with_capacity(raw.steps.len());
        let mut state = (*start).clone();
        for raw_step in &raw.steps {
            let step = self.resolve_step(&state, raw_step)?;
            state = tietze::calculus::apply_step(&state, &step)
                .map_err(|e| WsError::Resolve(format!("invalid step: {e}")))?;
            steps.push(step);
        }
        TietzeTrace::new(start, steps).map_err(|e| WsError::Resolve(e.to_string()))
    }

    fn resolve_step(&self, state: &Presentation, raw: &RawTietzeStep) -> WsResult<TietzeStep> {
        let word = |w| {
            resolve_word(state, w).map_err(|e| WsError::Resolve(format!("in step: {e}")))
        };
        Ok(match raw {
            RawTietzeStep::Tgen { fresh, word: u } => TietzeStep::Tgen {
                word: word(u)?,
                fresh: fresh.clone(),
            },
            RawTietzeStep::Trel { lhs, rhs, witness } => {
                let raw_witness = self.derivations.get(witness).ok_or_else(|| {
                    WsError::Resolve(format!("no derivation named {witness}"))
                })?;
                let witness = resolve_derivation(state, raw_witness)
                    .map_err(|e| WsError::Resolve(format!("witness {}: {e}", raw_witness.name)))?;
                TietzeStep::Trel {
                    lhs: word(lhs)?,
                    rhs: word(rhs)?,
                    witness,
                }
            }
            RawTietzeStep::Trefl { word: u } => TietzeStep::Trefl { word: word(u)? },
            RawTietzeStep::Tsym { lhs, rhs } => TietzeStep::Tsym {
                relation: Relation::new(word(lhs)?, word(rhs)?),
            },
            RawTietzeStep::Ttrans { first, second } => TietzeStep::Ttrans {
                first: Relation::new(word(&first.0)?, word(&first.1)?),
                second: Relation::new(word(&second.0)?, word(&second.1)?),
            },
            RawTietzeStep::Tctxt { rel, left, right } => TietzeStep::Tctxt {
                relation: Relation::new(word(&rel.0)?, word(&rel.1)?),
                left: word(left)?,
                right: word(right)?,
            },
        })
    }

    /// Resolves a zig-zag. Forward segments replay from the left; a
    /// backward segment's start is recovered by un-applying its steps from
    /// the current endpoint, then verified by replay.
    pub fn resolve_zigzag(&self, raw: &RawZigzag) -> WsResult<TietzeZigzag> {
        let start = self.presentation(Some(&raw.from))?.clone();
        let mut segments = Vec::new();
        let mut current = (*start).clone();
        for (forward, raw_steps) in &raw.segments {
            if *forward {
                let mut steps = Vec::with_capacity(raw_steps.len());
                let mut state = current.clone();
                let from = Arc::new(state.clone());
                for raw_step in raw_steps {
                    let step = self.resolve_step(&state, raw_step)?;
                    state = tietze::calculus::apply_step(&state, &step)
                        .map_err(|e| WsError::Resolve(format!("invalid step: {e}")))?;
                    steps.push(step);
                }
                let trace =
                    TietzeTrace::new(from, steps).map_err(|e| WsError::Resolve(e.to_string()))?;
                current = trace.end().clone();
                segments.push((SegmentDirection::Forward, trace));
            } else {
                let trace = self.resolve_backward_segment(&current, raw_steps)?;
                current = trace.start().clone();
                segments.push((SegmentDirection::Backward, trace));
            }
        }
        let to = self.presentation(Some(&raw.to))?;
        if current != **to {
            return resolve_err("zig-zag does not end at its stated endpoint");
        }
        TietzeZigzag::new((*start).clone(), segments).map_err(|e| WsError::Resolve(e.to_string()))
    }

    fn resolve_backward_segment(
        &self,
        end: &Presentation,
        raw_steps: &[RawTietzeStep],
    ) -> WsResult<TietzeTrace> {
        // Un-apply from the known end to find the segment's start: each
        // step added one relation (and tgen one generator); replay then
        // verifies the guess.
        let mut state = end.clone();
        for raw_step in raw_steps.iter().rev() {
            state = match raw_step {
                RawTietzeStep::Tgen { fresh, word } => {
                    let fresh_id = state
                        .gen_id(fresh)
                        .ok_or_else(|| WsError::Resolve(format!("no generator {fresh}")))?;
                    if fresh_id.index() + 1 != state.gen_count() {
                        return resolve_err("backward tgen must remove the last generator");
                    }
                    let rel = Relation::new(
                        resolve_word(&state, word)
                            .map_err(|e| WsError::Resolve(e.to_string()))?,
                        tietze::core::word::Word::single(fresh_id),
                    );
                    let without_rel = state
                        .with_removed_relation(&rel)
                        .map_err(|e| WsError::Resolve(e.to_string()))?;
                    shrink_alphabet(&without_rel)?
                }
                other => {
                    let added = added_relation_of(&state, other, self)?;
                    state
                        .with_removed_relation(&added)
                        .map_err(|e| WsError::Resolve(e.to_string()))?
                }
            };
        }
        // Replay forward and check we land on the stated end.
        let from = Arc::new(state.clone());
        let mut steps = Vec::with_capacity(raw_steps.len());
        let mut replay = state;
        for raw_step in raw_steps {
            let step = self.resolve_step(&replay, raw_step)?;
            replay = tietze::calculus::apply_step(&replay, &step)
                .map_err(|e| WsError::Resolve(format!("invalid backward step: {e}")))?;
            steps.push(step);
        }
        if replay != *end {
            return resolve_err("backward segment does not replay to its endpoint");
        }
        TietzeTrace::new(from, steps).map_err(|e| WsError::Resolve(e.to_string()))
    }
}

/// Drops the last generator of a presentation; every remaining relation
/// must avoid it.
fn shrink_alphabet(p: &Presentation) -> WsResult<Presentation> {
    let names: Vec<&str> = p.gen_names()[..p.gen_count() - 1]
        .iter()
        .map(|s| s.as_str())
        .collect();
    let shrunk = Presentation::build(&names, &[], p.is_reflexive())
        .map_err(|e| WsError::Resolve(e.to_string()))?;
    let rels = p
        .require_explicit()
        .map_err(|e| WsError::Resolve(e.to_string()))?;
    let last = GenId((p.gen_count() - 1) as u32);
    for rel in &rels {
        if rel.lhs.letters().chain(rel.rhs.letters()).any(|g| g == last) {
            return resolve_err("backward tgen removes a generator still in use");
        }
    }
    shrunk
        .with_rels(RelSet::Explicit(rels))
        .map_err(|e| WsError::Resolve(e.to_string()))
}

fn added_relation_of(
    state: &Presentation,
    raw: &RawTietzeStep,
    _ws: &Workspace,
) -> WsResult<Relation> {
    let word =
        |w| resolve_word(state, w).map_err(|e: tietze::Error| WsError::Resolve(e.to_string()));
    Ok(match raw {
        RawTietzeStep::Trel { lhs, rhs, .. } => Relation::new(word(lhs)?, word(rhs)?),
        RawTietzeStep::Trefl { word: u } => {
            let u = word(u)?;
            Relation::new(u.clone(), u)
        }
        RawTietzeStep::Tsym { lhs, rhs } => Relation::new(word(rhs)?, word(lhs)?),
        RawTietzeStep::Ttrans { first, second } => {
            Relation::new(word(&first.0)?, word(&second.1)?)
        }
        RawTietzeStep::Tctxt { rel, left, right } => {
            let l = word(left)?;
            let r = word(right)?;
            Relation::new(
                l.concat(&word(&rel.0)?).concat(&r),
                l.concat(&word(&rel.1)?).concat(&r),
            )
        }
        RawTietzeStep::Tgen { .. } => unreachable!("handled by the caller"),
    })
}

fn build_presentation(
    raw: &RawPresentation,
    ws: &Workspace,
    raw_morphisms: &[RawMorphism],
) -> WsResult<Option<Presentation>> {
    // Gather parts; a pullback part defers until its target is built.
    let names: Vec<&str> = raw.gens.iter().map(|s| s.as_str()).collect();
    let skeleton = Presentation::build(&names, &[], raw.reflexive)
        .map_err(|e| WsError::Resolve(format!("presentation {}: {e}", raw.name)))?;
    let mut explicit = std::collections::BTreeSet::new();
    let mut parts: Vec<RelSet> = Vec::new();
    for part in &raw.rels {
        match part {
            RawRelPart::Explicit(l, r) => {
                let rel = Relation::new(
                    resolve_word(&skeleton, l)
                        .map_err(|e| WsError::Resolve(format!("presentation {}: {e}", raw.name)))?,
                    resolve_word(&skeleton, r)
                        .map_err(|e| WsError::Resolve(format!("presentation {}: {e}", raw.name)))?,
                );
                explicit.insert(rel);
            }
            RawRelPart::Diagonal => parts.push(RelSet::Diagonal),
            RawRelPart::Pullback(morphism_name) => {
                let Some(raw_m) = raw_morphisms.iter().find(|m| &m.name == morphism_name) else {
                    return resolve_err(format!(
                        "presentation {} pulls back along unknown morphism {morphism_name}",
                        raw.name
                    ));
                };
                if raw_m.from != raw.name {
                    return resolve_err(format!(
                        "pullback morphism {morphism_name} does not start at {}",
                        raw.name
                    ));
                }
                let Some(target) = ws.presentations.get(&raw_m.to) else {
                    return Ok(None); // target not built yet
                };
                let mut map = Vec::with_capacity(raw.gens.len());
                for g in &raw.gens {
                    let Some((_, to)) = raw_m.map.iter().find(|(from, _)| from == g) else {
                        return resolve_err(format!(
                            "pullback morphism {morphism_name} misses generator {g}"
                        ));
                    };
                    let Some(id) = target.gen_id(to) else {
                        return resolve_err(format!(
                            "pullback morphism {morphism_name}: unknown target generator {to}"
                        ));
                    };
                    map.push(id);
                }
                parts.push(RelSet::Pullback {
                    map,
                    target: target.clone(),
                });
            }
        }
    }
    let rels = if parts.is_empty() {
        RelSet::Explicit(explicit)
    } else {
        let mut all = vec![RelSet::Explicit(explicit)];
        all.extend(parts);
        RelSet::Union(all)
    };
    skeleton
        .with_rels(rels)
        .map(Some)
        .map_err(|e| WsError::Resolve(format!("presentation {}: {e}", raw.name)))
}

fn build_morphism(raw: &RawMorphism, ws: &Workspace) -> WsResult<Morphism> {
    let Some(src) = ws.presentations.get(&raw.from) else {
        return resolve_err(format!("morphism {}: unknown source {}", raw.name, raw.from));
    };
    let Some(tgt) = ws.presentations.get(&raw.to) else {
        return resolve_err(format!("morphism {}: unknown target {}", raw.name, raw.to));
    };
    let pairs: Vec<(&str, &str)> = raw
        .map
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    Morphism::by_names(src, tgt, &pairs)
        .map_err(|e| WsError::Resolve(format!("morphism {}: {e}", raw.name)))
}
