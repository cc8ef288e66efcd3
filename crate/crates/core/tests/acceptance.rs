//! Acceptance sweeps. Runs without the libtest harness and prints one line per
//! criterion; the process fails if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use incidence_grading::oracle::{block_elements, isotypic_decomposition};
use incidence_grading::{
    bimodule_iso, bimodule_product, check_link_equation, dual_group, grading_iso, poset_isomorphisms,
    radical_square_component, validate_datum, verify_grading, AbelianGroup, BimoduleClass, Character, CycloNumber,
    GradingDatum, GroupElement, IncidenceElement, Poset, Subgroup,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

struct Outcome {
    cases: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Every `(H₁, H₂, χ, g)` of the two-block sweep.
fn two_block_cases() -> Vec<(AbelianGroup, Subgroup, Subgroup, Character, GroupElement)> {
    let mut out = Vec::new();
    for g in sweep_groups() {
        let subs = all_subgroups(&g);
        for h1 in &subs {
            for h2 in &subs {
                let meet = h1.intersect(h2).unwrap();
                for chi in dual_group(&meet).unwrap() {
                    for deg in elements(&g) {
                        out.push((g.clone(), h1.clone(), h2.clone(), chi.clone(), deg));
                    }
                }
            }
        }
    }
    out
}

/// Criteria 1–3 share one sweep.
fn two_block_sweep() -> (Outcome, Outcome, Outcome) {
    let (mut c1, mut c2, mut c3) = (Outcome::new(), Outcome::new(), Outcome::new());
    for (g, h1, h2, chi, deg) in two_block_cases() {
        let tag = || format!("{} H1={:?} H2={:?} chi={chi} g={deg}", group_name(&g), h1.generators(), h2.generators());
        let d = chain_datum(&g, &[h1.clone(), h2.clone()], &[vec![(chi.clone(), deg.clone())]]);
        let r = match d.realize() {
            Ok(r) => r,
            Err(e) => {
                c1.check(false, || format!("{}: realize failed: {e}", tag()));
                continue;
            }
        };
        let rep = verify_grading(&r);
        c1.check(rep.is_clean(), || format!("{}: {:?}", tag(), rep.violations));

        let expected = (h1.order().unwrap() * h2.order().unwrap() / chi.domain().order().unwrap()) as usize;
        let pieces = isotypic_decomposition(&r, 0, 1, &block_elements(&r, 0, 1)).unwrap();
        let dims_ok = pieces.iter().all(|p| p.rank == if p.character == chi { expected } else { 0 });
        c2.check(dims_ok, || {
            let ranks: Vec<(String, usize)> = pieces.iter().map(|p| (p.character.to_string(), p.rank)).collect();
            format!("{}: expected {expected}, ranks {ranks:?}", tag())
        });

        let links = check_link_equation(&r).unwrap();
        c3.check(links.is_clean() && links.entries.len() == 1, || format!("{}: {:?}", tag(), links.violations));
    }
    (c1, c2, c3)
}

/// Criteria 4 and 5 over every subgroup triple and every single-character
/// choice on both covers.
fn triple_sweep() -> (Outcome, Outcome) {
    let (mut c4, mut c5) = (Outcome::new(), Outcome::new());
    for g in sweep_groups() {
        let subs = all_subgroups(&g);
        let els = elements(&g);
        for h1 in &subs {
            for h2 in &subs {
                for h3 in &subs {
                    let h12 = h1.intersect(h2).unwrap();
                    let h23 = h2.intersect(h3).unwrap();
                    let h13 = h1.intersect(h3).unwrap();
                    let h123 = h12.intersect(h3).unwrap();
                    for (n12, c12) in dual_group(&h12).unwrap().into_iter().enumerate() {
                        for (n23, c23) in dual_group(&h23).unwrap().into_iter().enumerate() {
                            // degrees walk through the group as the characters vary
                            let g12 = els[(n12 + n23) % els.len()].clone();
                            let g23 = els[(3 * n12 + n23 + 1) % els.len()].clone();
                            let tag = || {
                                format!(
                                    "{} H1={:?} H2={:?} H3={:?} c12={c12} c23={c23}",
                                    group_name(&g),
                                    h1.generators(),
                                    h2.generators(),
                                    h3.generators()
                                )
                            };
                            let d = chain_datum(
                                &g,
                                &[h1.clone(), h2.clone(), h3.clone()],
                                &[vec![(c12.clone(), g12.clone())], vec![(c23.clone(), g23.clone())]],
                            );
                            let m12 = &d.cover_bimodules()[&(0, 1)];
                            let m23 = &d.cover_bimodules()[&(1, 2)];
                            let product = bimodule_product(m12, m23).unwrap();
                            let oracle = d
                                .realize()
                                .and_then(|r| radical_square_component(&r, 0, 2));
                            let count = (h13.order().unwrap() / h123.order().unwrap()) as usize;
                            let agree = match &oracle {
                                Ok(o) => bimodule_iso(&product, o).unwrap().is_some(),
                                Err(_) => false,
                            };
                            c4.check(agree && product.len() == count, || {
                                format!("{}: product {product:?} oracle {oracle:?} expected count {count}", tag())
                            });
                            let target = c12.restrict(&h123).unwrap().mul(&c23.restrict(&h123).unwrap()).unwrap();
                            for chi in product.characters() {
                                c5.check(chi.restrict(&h123).unwrap() == target, || format!("{}: {chi}", tag()));
                            }
                        }
                    }
                }
            }
        }
    }
    (c4, c5)
}

fn small_groups() -> Vec<AbelianGroup> {
    [&[2][..], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4]]
        .iter()
        .map(|t| AbelianGroup::finite(t).unwrap())
        .collect()
}

/// Criterion 6: twisted relabelings are isomorphic, mutations outside the
/// twist orbit are not, and `grading_iso` agrees with exhaustive search.
fn iso_round_trips() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = StdRng::seed_from_u64(0x150_6ad1);
    let groups = small_groups();
    let mut done = 0;
    while done < 200 {
        let g = groups.choose(&mut rng).unwrap().clone();
        let subs = all_subgroups(&g);
        let d = random_datum(&mut rng, &g, &subs, 4, 1);
        let autos: Vec<Vec<usize>> = poset_isomorphisms(d.skeleton(), d.skeleton(), None).collect();
        let alpha = autos.choose(&mut rng).unwrap().clone();
        let mu: Vec<Character> =
            d.blocks().iter().map(|h| dual_group(h).unwrap().choose(&mut rng).unwrap().clone()).collect();
        let twisted = relabel_and_twist(&d, &alpha, &mu);

        // mutate one cover character of the twisted datum, keeping characters distinct
        let mut mutations = Vec::new();
        for (&(i, j), m) in twisted.cover_bimodules() {
            for (t, (chi, _)) in m.pairs().iter().enumerate() {
                for other in dual_group(m.meet()).unwrap() {
                    if other != *chi && m.characters().all(|c| *c != other) {
                        mutations.push(((i, j), t, other));
                    }
                }
            }
        }
        mutations.shuffle(&mut rng);
        let mut mutated = None;
        for ((i, j), t, other) in mutations {
            let mut covers = twisted.cover_bimodules().clone();
            let m = &covers[&(i, j)];
            let mut pairs = m.pairs().to_vec();
            pairs[t].0 = other;
            let m2 = BimoduleClass::new(m.left(), m.right(), pairs).unwrap();
            covers.insert((i, j), m2);
            let e = GradingDatum::new(
                g.clone(),
                (**twisted.skeleton()).clone(),
                twisted.blocks().to_vec(),
                covers,
            )
            .unwrap();
            let brute = brute_force_iso(&d, &e);
            let fast = grading_iso(&d, &e).unwrap().is_some();
            out.check(brute == fast, || format!("disagreement on a mutation of {d:?}: brute {brute}, fast {fast}"));
            if !brute {
                mutated = Some(e);
                break;
            }
        }
        let Some(mutated) = mutated else { continue };
        done += 1;

        let brute = brute_force_iso(&d, &twisted);
        let fast = grading_iso(&d, &twisted).unwrap();
        out.check(brute && fast.is_some(), || format!("twisted copy not isomorphic: {d:?} vs {twisted:?}"));
        if let Some(w) = fast {
            // the witness really maps every cover class
            let ok = d.cover_bimodules().iter().all(|(&(i, j), m)| {
                let other = &twisted.cover_bimodules()[&(w.alpha[i], w.alpha[j])];
                incidence_grading::twist(other, &w.mu[i], &w.mu[j]).unwrap() == *m
            });
            out.check(ok, || "witness does not map the covers".into());
        }
        let fast = grading_iso(&d, &mutated).unwrap();
        out.check(fast.is_none(), || format!("mutation reported isomorphic: {d:?} vs {mutated:?}"));
    }
    out
}

/// Criterion 7: chains with trivial blocks realize to upper triangular matrices.
fn upper_triangular() -> Outcome {
    let mut out = Outcome::new();
    let g = AbelianGroup::finite(&[2]).unwrap();
    let t = g.trivial();
    let one = Character::trivial(&t).unwrap();
    for n in 1..=6usize {
        let blocks = vec![t.clone(); n];
        let covers = vec![vec![(one.clone(), g.zero())]; n - 1];
        let r = chain_datum(&g, &blocks, &covers).realize().unwrap();
        out.check(r.basis().len() == n * (n + 1) / 2, || format!("n={n}: dimension {}", r.basis().len()));
        out.check(poset_isomorphisms(r.poset(), &Poset::chain(n), None).count() == 1, || format!("n={n}: not a chain"));
        // each basis element is a matrix unit e_xy; compare with E_xy E_zw = δ_yz E_xw
        let mut units = Vec::new();
        for b in r.basis() {
            let terms: Vec<_> = b.element.terms().iter().collect();
            let is_unit = terms.len() == 1 && terms[0].1.is_one();
            out.check(is_unit, || format!("n={n}: basis element {:?} is not a matrix unit", b.element));
            units.push(*terms[0].0);
        }
        for (a, &(x, y)) in r.basis().iter().zip(&units) {
            for (b, &(z, w)) in r.basis().iter().zip(&units) {
                let prod = &a.element * &b.element;
                let expected = if y == z {
                    IncidenceElement::unit(r.poset(), x, w).unwrap()
                } else {
                    IncidenceElement::zero(r.poset())
                };
                out.check(prod == expected, || format!("n={n}: e{x}{y} e{z}{w} = {prod:?}"));
            }
        }
        out.check(verify_grading(&r).is_clean(), || format!("n={n}: grading violations"));
    }
    out
}

/// Criterion 8: corrupted gradings are always flagged.
fn mutation_sensitivity() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = StdRng::seed_from_u64(0x3a7e);
    let groups: Vec<AbelianGroup> = sweep_groups();
    let mut made = 0;
    while made < 50 {
        let g = groups.choose(&mut rng).unwrap().clone();
        let subs = all_subgroups(&g);
        let d = random_datum(&mut rng, &g, &subs, 3, 2);
        // On a block outside every cover an order-2 element can be re-graded to
        // another order-2 element and still give a grading, so such a bump is
        // not a corruption. Every block here lies on a cover.
        let on_cover = |x: usize| d.skeleton().covers().iter().any(|&(a, b)| a == x || b == x);
        if !validate_datum(&d).is_valid() || !(0..d.skeleton().len()).all(on_cover) {
            continue;
        }
        let kind = made % 3;
        let flagged = match kind {
            0 => {
                let mut r = d.realize().unwrap();
                let i = rng.gen_range(0..r.basis().len());
                let others: Vec<GroupElement> = elements(&g).into_iter().filter(|x| *x != r.basis()[i].degree).collect();
                r.basis_mut()[i].degree = others.choose(&mut rng).unwrap().clone();
                !verify_grading(&r).is_clean()
            }
            1 => {
                let mut r = d.realize().unwrap();
                let multi: Vec<usize> = (0..r.basis().len()).filter(|&i| r.basis()[i].element.terms().len() > 1).collect();
                let i = *multi.choose(&mut rng).unwrap();
                let keys: Vec<(usize, usize)> = r.basis()[i].element.terms().keys().copied().collect();
                let (x, y) = *keys.choose(&mut rng).unwrap();
                let old = r.basis()[i].element.get(x, y).unwrap().clone();
                let new = if rng.gen_bool(0.5) { &old + &CycloNumber::from_integer(1) } else { CycloNumber::zero(1) };
                r.basis_mut()[i].element.set(x, y, new).unwrap();
                !verify_grading(&r).is_clean()
            }
            _ => {
                let Some((&key, m)) = d.cover_bimodules().iter().next() else { continue };
                let mut pairs = m.pairs().to_vec();
                let (chi, deg) = pairs[0].clone();
                pairs.push((chi, g.add(&deg, &elements(&g)[1])));
                let mut covers = d.cover_bimodules().clone();
                covers.insert(key, BimoduleClass::new(m.left(), m.right(), pairs).unwrap());
                let e = GradingDatum::new(g.clone(), (**d.skeleton()).clone(), d.blocks().to_vec(), covers).unwrap();
                !validate_datum(&e).is_valid()
            }
        };
        out.check(flagged, || format!("mutation of kind {kind} on {d:?} went unnoticed"));
        made += 1;
    }
    out
}

fn report(number: usize, name: &str, run: impl FnOnce() -> Vec<Outcome>) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(run));
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(outcomes) => {
            let cases: usize = outcomes.iter().map(|o| o.cases).sum();
            let failures: Vec<&String> = outcomes.iter().flat_map(|o| &o.failures).collect();
            let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
            println!("criterion {number} {name}: {verdict} ({cases} checks, {} failures, {secs:.1}s)", failures.len());
            for f in failures.iter().take(5) {
                println!("    {f}");
            }
            failures.is_empty()
        }
        Err(_) => {
            println!("criterion {number} {name}: FAIL (panicked after {secs:.1}s)");
            false
        }
    }
}

fn main() {
    let mut all = true;
    let mut sweep = None;
    let mut triple = None;
    all &= report(1, "construction soundness", || {
        let (a, b, c) = two_block_sweep();
        sweep = Some((b, c));
        vec![a]
    });
    let (c2, c3) = sweep.take().unwrap_or_else(|| (Outcome::new(), Outcome::new()));
    let missing = |o: &Outcome| o.cases == 0;
    let ok2 = !missing(&c2);
    all &= report(2, "dimension formula", || vec![c2]) && ok2;
    let ok3 = !missing(&c3);
    all &= report(3, "link identity", || vec![c3]) && ok3;
    all &= report(4, "product theorem oracle equivalence", || {
        let (a, b) = triple_sweep();
        triple = Some(b);
        vec![a]
    });
    let c5 = triple.take().unwrap_or_else(Outcome::new);
    let ok5 = !missing(&c5);
    all &= report(5, "restriction law", || vec![c5]) && ok5;
    all &= report(6, "isomorphism round-trips", || vec![iso_round_trips()]);
    all &= report(7, "upper triangular recovery", || vec![upper_triangular()]);
    all &= report(8, "mutation sensitivity", || vec![mutation_sensitivity()]);
    if !all {
        std::process::exit(1);
    }
}
