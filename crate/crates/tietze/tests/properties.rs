//! Property suites for the algebraic laws and closure properties.

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;

use tietze::calculus::{
    apply_step, expand_trel, make_equivalence_presentation, search_equivalence,
    theorem1_cospan, CospanOutcome, TietzeStep, TietzeTrace,
};
use tietze::category::shapes::g_n;
use tietze::category::{coproduct, equalizer, product, pushout};
use tietze::core::canon::{canonical_form, canonically_equal};
use tietze::core::morphism::Morphism;
use tietze::core::presentation::{Presentation, RelSet, Relation};
use tietze::core::word::{GenId, Word};
use tietze::model::{
    certify_weak_equivalence, check_weq_certificate, factor_mono_tfib, is_cofibration,
    is_trivial_fibration, JMorphism, WeqVerdict,
};
use tietze::rewriting::validate::{check_hom_certificate, replay_derivation};
use tietze::rewriting::verdict::SearchBudget;
use tietze::rewriting::{equivalent, knuth_bendix, normal_form, search_derivation, KbBudget, Verdict};

// ---------------------------------------------------------------------
// Core laws
// ---------------------------------------------------------------------

fn arb_word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..gens as u32, 0..=max_len).prop_map(Word::from_ids)
}

proptest! {
    #[test]
    fn free_monoid_laws(u in arb_word(3, 5), v in arb_word(3, 5), w in arb_word(3, 5)) {
        prop_assert_eq!(u.concat(&v).len(), u.len() + v.len());
        prop_assert_eq!(u.concat(&v).concat(&w), u.concat(&v.concat(&w)));
        prop_assert_eq!(u.concat(&Word::empty()), u.clone());
        prop_assert_eq!(Word::empty().concat(&u), u);
    }

    #[test]
    fn membership_agrees_with_bounded_enumeration(
        rels in prop::collection::btree_set((arb_word(2, 2), arb_word(2, 2)), 0..4),
        reflexive in any::<bool>(),
    ) {
        let rels: std::collections::BTreeSet<Relation> =
            rels.into_iter().map(|(l, r)| Relation::new(l, r)).collect();
        let p = Presentation::new(vec!["a", "b"], RelSet::Explicit(rels), reflexive).unwrap();
        let enumerated = p.enumerate_relations(2);
        for lhs in p.words_up_to(2) {
            for rhs in p.words_up_to(2) {
                let rel = Relation::new(lhs.clone(), rhs.clone());
                prop_assert_eq!(p.has_relation(&rel), enumerated.contains(&rel));
            }
        }
    }
}

#[test]
fn canonical_form_is_idempotent_and_renaming_invariant() {
    let mut rng = common::rng(11);
    for _ in 0..100 {
        let p = common::random_presentation(&mut rng, 4, 4, 3);
        let once = canonical_form(&p).unwrap();
        assert_eq!(canonical_form(&once).unwrap(), once);
        // Order-preserving renaming.
        let renamed_names: Vec<String> = (0..p.gen_count()).map(|i| format!("x{i}")).collect();
        let renamed = Presentation::new(renamed_names, p.rels().clone(), p.is_reflexive()).unwrap();
        assert!(canonically_equal(&p, &renamed).unwrap());
    }
}

#[test]
fn morphism_law_is_closed_under_composition() {
    let mut rng = common::rng(12);
    for _ in 0..50 {
        let f = common::random_valid_morphism(&mut rng, 3, 3, 2);
        let g = common::random_valid_morphism(&mut rng, 3, 3, 2);
        // Compose through a rebased g sharing f's target alphabet size.
        if g.src().gen_count() != f.tgt().gen_count() {
            continue;
        }
        let rebased = Morphism::new(
            f.tgt().clone(),
            g.tgt().clone(),
            g.map().to_vec(),
        )
        .unwrap();
        if f.validate(4).is_ok() && rebased.validate(4).is_ok() {
            // The composite may only fail where the middle law failed.
            assert!(f.then(&rebased).unwrap().validate(2).is_ok());
        }
    }
}

// ---------------------------------------------------------------------
// Category: functor to sets, universal properties
// ---------------------------------------------------------------------

#[test]
fn coproduct_counts_are_additive() {
    let mut rng = common::rng(21);
    for _ in 0..100 {
        let p = common::random_presentation(&mut rng, 3, 3, 2);
        let q = common::random_presentation(&mut rng, 3, 3, 2);
        let c = coproduct(&p, &q).unwrap();
        assert_eq!(
            c.presentation.gen_count(),
            p.gen_count() + q.gen_count()
        );
        assert_eq!(
            c.presentation.require_explicit().unwrap().len(),
            p.require_explicit().unwrap().len() + q.require_explicit().unwrap().len()
        );
        assert!(c.left.is_mono() && c.right.is_mono());
    }
}

/// Exhaustively checks the pushout's universal property against probe
/// cocones into presentations with at most two generators.
#[test]
fn pushout_universal_property_on_probes() {
    let mut rng = common::rng(22);
    for _ in 0..10 {
        let base = common::random_presentation(&mut rng, 2, 1, 2);
        let f = common::random_valid_morphism(&mut rng, 2, 2, 2);
        // Rebase f and g over the same source.
        let g = common::random_valid_morphism(&mut rng, 2, 2, 2);
        let (Ok(f), Ok(g)) = (
            Morphism::new(base.clone(), f.tgt().clone(), base.gen_ids().map(|a| f.map()[a.index() % f.map().len()]).collect()),
            Morphism::new(base.clone(), g.tgt().clone(), base.gen_ids().map(|a| g.map()[a.index() % g.map().len()]).collect()),
        ) else {
            continue;
        };
        if f.validate(4).is_err() || g.validate(4).is_err() {
            continue;
        }
        let Ok(po) = pushout(&f, &g) else { continue };
        // Probes: the free presentations on 0..2 generators, all cocones.
        for probe_gens in 0..=2usize {
            let probe = Arc::new(g_n(probe_gens));
            let maps = all_maps(f.tgt().gen_count(), probe_gens);
            let maps2 = all_maps(g.tgt().gen_count(), probe_gens);
            for m1 in &maps {
                for m2 in &maps2 {
                    let c1 = Morphism::new(f.tgt().clone(), probe.clone(), m1.clone()).unwrap();
                    let c2 = Morphism::new(g.tgt().clone(), probe.clone(), m2.clone()).unwrap();
                    if c1.validate(3).is_err() || c2.validate(3).is_err() {
                        continue;
                    }
                    if f.then(&c1).unwrap() != g.then(&c2).unwrap() {
                        continue;
                    }
                    // A unique mediating morphism must exist.
                    let mut found = 0usize;
                    for cand in all_maps(po.presentation.gen_count(), probe_gens) {
                        let m =
                            Morphism::new(po.presentation.clone(), probe.clone(), cand).unwrap();
                        if m.validate(3).is_ok()
                            && po.left.then(&m).unwrap() == c1
                            && po.right.then(&m).unwrap() == c2
                        {
                            found += 1;
                        }
                    }
                    assert_eq!(found, 1, "mediating morphism must be unique");
                }
            }
        }
    }
}

fn all_maps(src: usize, tgt: usize) -> Vec<Vec<GenId>> {
    if src == 0 {
        return vec![Vec::new()];
    }
    if tgt == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![GenId(0); src];
    loop {
        out.push(cur.clone());
        let mut pos = src;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cur[pos].0 += 1;
            if cur[pos].index() < tgt {
                break;
            }
            cur[pos] = GenId(0);
        }
    }
}

#[test]
fn product_projections_form_a_cone() {
    let mut rng = common::rng(23);
    for _ in 0..50 {
        let p = common::random_presentation(&mut rng, 2, 2, 2);
        let q = common::random_presentation(&mut rng, 2, 2, 2);
        let prod = product(&p, &q, 3).unwrap();
        assert_eq!(prod.presentation.gen_count(), p.gen_count() * q.gen_count());
        assert!(prod.left.validate(4).is_ok());
        assert!(prod.right.validate(4).is_ok());
    }
}

#[test]
fn equalizer_equalizes() {
    let mut rng = common::rng(24);
    for _ in 0..50 {
        let f = common::random_valid_morphism(&mut rng, 3, 2, 2);
        let g = Morphism::new(
            f.src().clone(),
            f.tgt().clone(),
            f.src()
                .gen_ids()
                .map(|a| {
                    if rng.gen_bool(0.5) {
                        f.apply_gen(a)
                    } else {
                        GenId(rng.gen_range(0..f.tgt().gen_count()) as u32)
                    }
                })
                .collect(),
        )
        .unwrap();
        if g.validate(4).is_err() {
            continue;
        }
        let eq = equalizer(&f, &g).unwrap();
        assert!(eq.inclusion.is_mono());
        assert_eq!(
            eq.inclusion.then(&f).unwrap(),
            eq.inclusion.then(&g).unwrap()
        );
    }
}

#[test]
fn monos_are_stable_under_pushout() {
    let mut rng = common::rng(25);
    let mut checked = 0usize;
    for _ in 0..200 {
        let f = common::random_valid_morphism(&mut rng, 3, 2, 2);
        if !f.is_mono() {
            continue;
        }
        let g = common::random_valid_morphism(&mut rng, 3, 2, 2);
        let Ok(g) = Morphism::new(f.src().clone(), g.tgt().clone(),
            f.src().gen_ids().map(|a| g.map()[a.index() % g.map().len()]).collect()) else { continue };
        if g.validate(4).is_err() {
            continue;
        }
        let Ok(po) = pushout(&g, &f) else { continue };
        // The pushout of the mono f along g is the cocone leg out of g's
        // target.
        assert!(po.left.is_mono(), "pushout of a mono is a mono");
        checked += 1;
    }
    assert!(checked > 20, "too few mono pushouts checked: {checked}");
}

// ---------------------------------------------------------------------
// Rewriting: congruence structure and soundness
// ---------------------------------------------------------------------

#[test]
fn proofs_compose_and_lift_into_contexts() {
    let mut rng = common::rng(31);
    let budget = SearchBudget::new(300, 6).without_refutation();
    for _ in 0..200 {
        let p = common::random_presentation(&mut rng, 3, 3, 2);
        let u = common::random_word(&mut rng, p.gen_count(), 3);
        let v = common::random_word(&mut rng, p.gen_count(), 3);
        let w = common::random_word(&mut rng, p.gen_count(), 3);
        let (Ok(d1), Ok(d2)) = (
            search_derivation(&p, &u, &v, &budget),
            search_derivation(&p, &v, &w, &budget),
        ) else {
            continue;
        };
        // Transitivity by concatenation.
        let joined = d1.then(&d2).expect("shared middle word");
        replay_derivation(&p, &joined).unwrap();
        assert_eq!((joined.start.clone(), joined.end.clone()), (u.clone(), w));
        // Context closure.
        let left = common::random_word(&mut rng, p.gen_count(), 2);
        let right = common::random_word(&mut rng, p.gen_count(), 2);
        let lifted = d1.in_context(&left, &right);
        replay_derivation(&p, &lifted).unwrap();
        assert_eq!(lifted.start, left.concat(&u).concat(&right));
    }
}

#[test]
fn normal_forms_are_idempotent_class_invariants() {
    let mut rng = common::rng(32);
    let mut completed = 0usize;
    for _ in 0..60 {
        let p = common::random_presentation(&mut rng, 2, 2, 3);
        let Some(completion) = knuth_bendix(&p, &KbBudget::new(40, 2000)).unwrap() else {
            continue;
        };
        completed += 1;
        for _ in 0..5 {
            let u = common::random_word(&mut rng, p.gen_count(), 4);
            let nf = normal_form(&completion.system, &u).unwrap();
            assert_eq!(normal_form(&completion.system, &nf).unwrap(), nf);
            // The normal form is congruent to the original word in the
            // completed presentation.
            match equivalent(&completion.completed, &u, &nf, &SearchBudget::new(2000, 10)).unwrap()
            {
                Verdict::Proved(d) => replay_derivation(&completion.completed, &d).unwrap(),
                other => panic!("nf must be congruent, got {other:?}"),
            }
        }
    }
    assert!(completed > 20, "too few completions: {completed}");
}

// ---------------------------------------------------------------------
// Calculus: trace soundness, expansion, cospans, zig-zags
// ---------------------------------------------------------------------

#[test]
fn traces_transport_verdicts() {
    let mut rng = common::rng(41);
    let budget = SearchBudget::new(400, 6);
    for _ in 0..40 {
        let p = common::random_presentation(&mut rng, 2, 2, 2);
        let (trace, _) = common::random_trace_extension(&mut rng, &p, 3, 2);
        let end = trace.end().clone();
        for _ in 0..4 {
            let u = common::random_word(&mut rng, p.gen_count(), 3);
            let v = common::random_word(&mut rng, p.gen_count(), 3);
            match equivalent(&p, &u, &v, &budget).unwrap() {
                Verdict::Proved(d) => {
                    // Relations only grow: the same derivation replays in
                    // the end presentation.
                    replay_derivation(&end, &d).unwrap();
                }
                _ => {}
            }
            match equivalent(&end, &u, &v, &budget).unwrap() {
                Verdict::Refuted(cert) => {
                    // Restriction along the inclusion refutes in the start.
                    let restricted = tietze::rewriting::verdict::HomCertificate {
                        table: cert.table.clone(),
                        assignment: cert.assignment[..p.gen_count()].to_vec(),
                        left: u.clone(),
                        right: v.clone(),
                    };
                    check_hom_certificate(&p, &restricted).unwrap();
                }
                _ => {}
            }
        }
    }
}

#[test]
fn expansion_covers_the_added_relations() {
    let mut rng = common::rng(42);
    let budget = SearchBudget::new(300, 6).without_refutation();
    let mut expanded_count = 0usize;
    for _ in 0..60 {
        let p = common::random_presentation(&mut rng, 2, 3, 2);
        let u = common::random_word(&mut rng, p.gen_count(), 3);
        let v = common::random_word(&mut rng, p.gen_count(), 3);
        let Ok(witness) = search_derivation(&p, &u, &v, &budget) else {
            continue;
        };
        let trace = TietzeTrace::new(
            p.clone(),
            vec![TietzeStep::Trel {
                lhs: u.clone(),
                rhs: v.clone(),
                witness,
            }],
        )
        .unwrap();
        let expanded = expand_trel(&trace).unwrap();
        assert!(expanded.trace.steps().iter().all(|s| s.is_atomic()));
        for rel in trace.end().require_explicit().unwrap() {
            assert!(expanded.trace.end().has_relation(&rel));
        }
        expanded_count += 1;
    }
    assert!(expanded_count > 20);
}

#[test]
fn equivalence_presentations_round_trip() {
    let mut rng = common::rng(43);
    let budget = SearchBudget::new(300, 6).without_refutation();
    let mut checked = 0usize;
    for _ in 0..100 {
        let p = common::random_presentation(&mut rng, 2, 3, 2);
        let u = common::random_word(&mut rng, p.gen_count(), 3);
        let v = common::random_word(&mut rng, p.gen_count(), 3);
        let Ok(d) = search_derivation(&p, &u, &v, &budget) else {
            continue;
        };
        let (eq, realize) = make_equivalence_presentation(&p, &d).unwrap();
        eq.check_gluing().unwrap();
        assert!(realize.validate(6).is_ok());
        let extracted =
            tietze::calculus::derivation_from_factorization(&eq, &realize).unwrap();
        assert_eq!((extracted.start.clone(), extracted.end.clone()), (u, v));
        replay_derivation(&p, &extracted).unwrap();
        checked += 1;
    }
    assert!(checked > 30);
}

#[test]
fn factorization_contracts_hold_on_random_morphisms() {
    let mut rng = common::rng(44);
    for _ in 0..100 {
        let f = common::random_valid_morphism(&mut rng, 3, 3, 2);
        let fact = factor_mono_tfib(&f).unwrap();
        assert!(fact.cofibration.is_mono());
        assert!(is_cofibration(&fact.cofibration));
        assert!(is_trivial_fibration(&fact.fibration).unwrap());
        assert_eq!(fact.cofibration.then(&fact.fibration).unwrap(), f);
    }
}

#[test]
fn j_family_members_are_certified_trivial_cofibrations() {
    let families = [
        JMorphism::AddGenerator { m: 1 },
        JMorphism::AddReflexivity { m: 2 },
        JMorphism::AddSymmetry { m: 1, n: 1 },
        JMorphism::AddTransitivity { m: 1, n: 1, p: 1 },
        JMorphism::AddContext {
            m: 1,
            n: 1,
            p: 1,
            q: 0,
        },
    ];
    for j in families {
        let f = j.inclusion();
        assert!(is_cofibration(&f), "{j:?}");
        match certify_weak_equivalence(&f, &SearchBudget::new(2000, 6)).unwrap() {
            WeqVerdict::Proved(cert) => check_weq_certificate(&f, &cert).unwrap(),
            other => panic!("{j:?} not certified: {other:?}"),
        }
    }
}

#[test]
fn certified_weak_equivalences_transport_along_pushouts() {
    let mut rng = common::rng(45);
    let budget = SearchBudget::new(2000, 6);
    let mut transported = 0usize;
    for _ in 0..20 {
        let p = common::random_presentation(&mut rng, 2, 2, 2);
        let (_, inclusion) = common::random_trace_extension(&mut rng, &p, 2, 2);
        if !certify_weak_equivalence(&inclusion, &budget).unwrap().is_proved() {
            continue;
        }
        // Push the certified inclusion out along a random morphism.
        let other = common::random_valid_morphism(&mut rng, 2, 2, 2);
        let Ok(glue) = Morphism::new(
            p.clone(),
            other.tgt().clone(),
            p.gen_ids().map(|a| other.map()[a.index() % other.map().len()]).collect(),
        ) else {
            continue;
        };
        if glue.validate(4).is_err() {
            continue;
        }
        let Ok(po) = pushout(&glue, &inclusion) else { continue };
        match certify_weak_equivalence(&po.left, &SearchBudget::new(4000, 7)).unwrap() {
            WeqVerdict::Proved(cert) => {
                check_weq_certificate(&po.left, &cert).unwrap();
                transported += 1;
            }
            other => panic!("pushout of a certified weq not re-certified: {other:?}"),
        }
    }
    assert!(transported >= 5, "too few transports: {transported}");
}

#[test]
fn cospans_on_generated_pairs_certify_both_legs() {
    let mut rng = common::rng(46);
    let budget = SearchBudget::new(4000, 7);
    let mut built = 0usize;
    for _ in 0..20 {
        let p = common::random_presentation(&mut rng, 2, 2, 2);
        let (trace, _) = common::random_trace_extension(&mut rng, &p, 2, 2);
        let q = Arc::new(trace.end().clone());
        match theorem1_cospan(&p, &q, None, &budget).unwrap() {
            CospanOutcome::Built(cospan) => {
                cospan.trace_left.revalidate().unwrap();
                cospan.trace_right.revalidate().unwrap();
                for leg in [&cospan.leg_left, &cospan.leg_right] {
                    assert!(certify_weak_equivalence(leg, &budget).unwrap().is_proved());
                }
                built += 1;
            }
            CospanOutcome::Unknown { reason } => panic!("cospan not built: {reason}"),
        }
    }
    assert_eq!(built, 20);
}

#[test]
fn found_zigzags_validate_and_reverse() {
    let mut rng = common::rng(47);
    let budget = SearchBudget::new(3000, 2);
    let mut found = 0usize;
    for _ in 0..10 {
        let p = common::random_presentation(&mut rng, 2, 1, 2);
        let (trace, _) = common::random_trace_extension(&mut rng, &p, 1, 1);
        let q = Arc::new(trace.end().clone());
        if let Some(z) = search_equivalence(&p, &q, &budget).unwrap() {
            z.revalidate().unwrap();
            assert_eq!(z.start(), &*p);
            assert_eq!(z.end(), &*q);
            let r = z.reversed();
            r.revalidate().unwrap();
            found += 1;
        }
    }
    assert!(found >= 3, "too few zig-zags found: {found}");
}

// ---------------------------------------------------------------------
// Cross-route exclusivity, driven by proptest
// ---------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn verdicts_never_contradict(
        rel_data in prop::collection::vec((arb_word(2, 2), arb_word(2, 2)), 0..3),
        u in arb_word(2, 3),
        v in arb_word(2, 3),
    ) {
        let rels: std::collections::BTreeSet<Relation> =
            rel_data.into_iter().map(|(l, r)| Relation::new(l, r)).collect();
        let p = Presentation::new(vec!["a", "b"], RelSet::Explicit(rels), true).unwrap();
        let budget = SearchBudget::new(200, 5).without_refutation();
        let proof = search_derivation(&p, &u, &v, &budget).ok();
        let refutation = tietze::rewriting::separate(&p, &u, &v, 3).unwrap();
        if let Some(d) = &proof {
            replay_derivation(&p, d).unwrap();
        }
        if let Some(c) = &refutation {
            check_hom_certificate(&p, c).unwrap();
        }
        prop_assert!(!(proof.is_some() && refutation.is_some()));
    }
}

// ---------------------------------------------------------------------
// Remaining universal-property and cross-route checks
// ---------------------------------------------------------------------

#[test]
fn product_universal_property_on_probes() {
    // For cones out of small free probes, a unique mediating morphism into
    // the product exists.
    let p = Arc::new(Presentation::build(&["a"], &[("a a", "a")], false).unwrap());
    let q = Arc::new(Presentation::build(&["b"], &[("b b", "b")], false).unwrap());
    let prod = product(&p, &q, 3).unwrap();
    for probe_gens in 1..=2usize {
        let probe = Arc::new(g_n(probe_gens));
        for m1 in all_maps(probe_gens, p.gen_count()) {
            for m2 in all_maps(probe_gens, q.gen_count()) {
                let c1 = Morphism::new(probe.clone(), p.clone(), m1.clone()).unwrap();
                let c2 = Morphism::new(probe.clone(), q.clone(), m2.clone()).unwrap();
                if c1.validate(3).is_err() || c2.validate(3).is_err() {
                    continue;
                }
                let mut found = 0usize;
                for cand in all_maps(probe_gens, prod.presentation.gen_count()) {
                    let m =
                        Morphism::new(probe.clone(), prod.presentation.clone(), cand).unwrap();
                    if m.validate(3).is_ok()
                        && m.then(&prod.left).unwrap() == c1
                        && m.then(&prod.right).unwrap() == c2
                    {
                        found += 1;
                    }
                }
                assert_eq!(found, 1, "mediating morphism into the product");
            }
        }
    }
}

#[test]
fn word_representation_is_natural() {
    use tietze::category::{morphism_as_word, word_as_morphism};
    let mut rng = common::rng(51);
    for _ in 0..100 {
        let w = common::random_valid_morphism(&mut rng, 3, 2, 2);
        let u = common::random_word(&mut rng, w.src().gen_count(), 4);
        let f = word_as_morphism(&u, w.src()).unwrap();
        assert_eq!(morphism_as_word(&f), u);
        assert_eq!(
            morphism_as_word(&f.then(&w).unwrap()),
            w.apply(&u).unwrap()
        );
    }
}

#[test]
fn factored_fibrations_lift_against_the_generators() {
    // Cross-check of the by-construction trivial fibration: every
    // commuting square over the generating cofibrations with m, n ≤ 2 has
    // a filler.
    use tietze::model::{generating_cofibrations, solve_lifting, GenCofibration};
    let mut rng = common::rng(52);
    for _ in 0..5 {
        let f = common::random_valid_morphism(&mut rng, 2, 2, 2);
        let fact = factor_mono_tfib(&f).unwrap();
        let p = &fact.fibration;
        let x = p.src();
        let y = p.tgt();
        for i in generating_cofibrations(2) {
            let incl = i.inclusion();
            match i {
                GenCofibration::GenInclusion => {
                    let probe = Morphism::new(incl.src().clone(), x.clone(), vec![]).unwrap();
                    for b in y.gen_ids() {
                        let g = Morphism::new(incl.tgt().clone(), y.clone(), vec![b]).unwrap();
                        assert!(
                            solve_lifting(&incl, p, &probe, &g, 2).unwrap().is_some(),
                            "generator square must lift"
                        );
                    }
                }
                GenCofibration::RelInclusion { m, n } => {
                    for pick in all_maps(m + n, x.gen_count()) {
                        let probe =
                            Morphism::new(incl.src().clone(), x.clone(), pick.clone()).unwrap();
                        let g_map: Vec<GenId> =
                            pick.iter().map(|a| p.apply_gen(*a)).collect();
                        let g = Morphism::new(incl.tgt().clone(), y.clone(), g_map).unwrap();
                        if g.validate(2).is_ok() {
                            assert!(
                                solve_lifting(&incl, p, &probe, &g, 2).unwrap().is_some(),
                                "relation square must lift"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn cellular_replay_reconstructs_random_monos() {
    use tietze::model::cellular_decomposition;
    let mut rng = common::rng(53);
    for _ in 0..100 {
        let p = common::random_presentation(&mut rng, 2, 2, 2);
        let (_, inclusion) = common::random_trace_extension(&mut rng, &p, 3, 2);
        assert!(inclusion.is_mono());
        let cd = cellular_decomposition(&inclusion).unwrap();
        let replayed = cd.replay().unwrap();
        assert!(canonically_equal(&replayed, inclusion.tgt()).unwrap());
    }
}

#[test]
fn every_presentation_is_cofibrant() {
    let mut rng = common::rng(54);
    for _ in 0..20 {
        let p = common::random_presentation(&mut rng, 3, 3, 2);
        let from_empty =
            Morphism::new(Arc::new(Presentation::empty()), p.clone(), vec![]).unwrap();
        assert!(is_cofibration(&from_empty));
        let id = Morphism::identity(&p);
        assert!(id.is_mono() && id.is_epi());
    }
}
