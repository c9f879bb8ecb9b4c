//! Deciding whether an entropy vector is representable by an EPR-pair
//! graph.
//!
//! The generator entropy vectors are linearly independent, so the cone
//! they span is simplicial: a vector inside the span has a unique
//! coefficient solution, and membership reduces to exact Gaussian
//! elimination plus sign checks.  Refutations come with a witness —
//! either a span equality the vector violates or the generator whose
//! unique coefficient is negative.
//!
//! Oracle-produced float vectors go through [`decide_approx`], which
//! snaps each component to the nearest rational with bounded denominator
//! before running the exact decision.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{generator_graphs, generators, EprGraph, Generator};
use crate::inequality::{span_constraints, Inequality};
use crate::linalg::{solve_unique, Matrix, Solve};
use crate::party::fmt_subset;
use crate::rational::{rational_from_f64, Rational};
use crate::vector::{EntropyVector, FloatEntropyVector};

/// Outcome of the exact membership decision.
#[derive(Debug, Clone)]
pub enum Membership {
    /// The unique decomposition; its entropy vector equals the input
    /// exactly.
    Member(EprGraph),
    /// The vector violates a span equality (first violated one in
    /// canonical order), so it is outside the linear span of the
    /// generators.
    NotInSpan { equality: Inequality, value: Rational },
    /// The vector is in the span but its unique solve has a negative
    /// coefficient (first one in generator order).
    NegativeCoefficient {
        generator: Generator,
        index: usize,
        coefficient: Rational,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Decides representability of an exact entropy vector.
pub fn decide(v: &EntropyVector) -> Membership {
    let parties = v.parties();
    for equality in span_constraints(parties) {
        let value = equality.evaluate(v).expect("same party count");
        if !value.is_zero() {
            return Membership::NotInSpan { equality, value };
        }
    }
    let gens = generators(parties);
    let graphs = generator_graphs(parties);
    let masks: Vec<u64> = parties.subsets().collect();
    let matrix = Matrix::from_fn(masks.len(), graphs.len(), |r, c| {
        graphs[c].subset_entropy(masks[r]).expect("mask in range")
    });
    let coefficients = match solve_unique(&matrix, v.values()) {
        Solve::Unique(x) => x,
        Solve::Inconsistent(_) => {
            unreachable!("span constraints hold, so the generator system is consistent")
        }
    };
    for (index, coefficient) in coefficients.iter().enumerate() {
        if coefficient.is_negative() {
            return Membership::NegativeCoefficient {
                generator: gens[index],
                index,
                coefficient: coefficient.clone(),
            };
        }
    }
    let mut graph = EprGraph::new(parties);
    for (gen, c) in gens.iter().zip(coefficients) {
        match *gen {
            Generator::Pair(i, j) => graph.set_pair(i, j, c).expect("valid weight"),
            Generator::Env(i) => graph.set_env(i, c).expect("valid weight"),
        }
    }
    debug_assert_eq!(graph.entropy_vector(), *v);
    Membership::Member(graph)
}

/// Snapping parameters for [`decide_approx`].
#[derive(Debug, Clone, Copy)]
pub struct SnapOptions {
    /// Max distance (bits) a component may sit from its snapped rational.
    pub tol: f64,
    /// Denominator bound for the snap.
    pub max_denominator: u64,
}

impl Default for SnapOptions {
    fn default() -> Self {
        SnapOptions { tol: 1e-6, max_denominator: 1 << 20 }
    }
}

/// Result of the approximate decision: the exact decision on the snapped
/// vector plus the largest snap residual encountered.
#[derive(Debug, Clone)]
pub struct ApproxDecision {
    pub membership: Membership,
    /// The rational vector the decision actually ran on.
    pub snapped: EntropyVector,
    /// Largest |component - snapped| in bits.
    pub max_residual: f64,
}

/// Snaps a float vector to low-denominator rationals and decides exactly.
///
/// Errors with [`Error::Unresolvable`] if any component sits farther than
/// `opts.tol` from every rational with denominator `<= opts.max_denominator`.
pub fn decide_approx(v: &FloatEntropyVector, opts: &SnapOptions) -> Result<ApproxDecision> {
    let tol = rational_from_f64(opts.tol)?;
    let mut snapped = Vec::with_capacity(v.values().len());
    let mut max_residual = Rational::zero();
    for (mask, x) in v.iter() {
        let exact = rational_from_f64(x).map_err(|_| Error::Unresolvable {
            subset: fmt_subset(mask),
            value: x,
            residual: f64::NAN,
            max_denominator: opts.max_denominator,
            tol: opts.tol,
        })?;
        let best = best_rational_approx(&exact, opts.max_denominator);
        let residual = (&exact - &best).abs();
        if residual > tol {
            return Err(Error::Unresolvable {
                subset: fmt_subset(mask),
                value: x,
                residual: residual.to_f64().unwrap_or(f64::NAN),
                max_denominator: opts.max_denominator,
                tol: opts.tol,
            });
        }
        if residual > max_residual {
            max_residual = residual;
        }
        snapped.push(best);
    }
    let snapped = EntropyVector::new(v.parties(), snapped)?;
    let membership = decide(&snapped);
    Ok(ApproxDecision {
        membership,
        snapped,
        max_residual: max_residual.to_f64().unwrap_or(0.0),
    })
}

/// Nearest rational to `target` with denominator at most `max_denominator`
/// (ties resolve toward the smaller denominator).  Continued-fraction
/// walk; exact throughout.
pub fn best_rational_approx(target: &Rational, max_denominator: u64) -> Rational {
    let bound = BigInt::from(max_denominator.max(1));
    if *target.denom() <= bound {
        return target.clone();
    }
    let negative = target.is_negative();
    let t = target.abs();

    // convergents p/q of the continued fraction of t
    let mut p_prev = BigInt::from(1);
    let mut q_prev = BigInt::from(0);
    let mut a = t.floor().to_integer();
    let mut p = a.clone();
    let mut q = BigInt::from(1);
    let mut rem = &t - Rational::from_integer(a);
    loop {
        if rem.is_zero() {
            // exact value reachable within the bound (caught above for
            // the initial value, kept for safety)
            break;
        }
        let inv = rem.recip();
        a = inv.floor().to_integer();
        rem = inv - Rational::from_integer(a.clone());
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if q_next > bound {
            // boundary: last in-bound convergent vs. the furthest
            // in-bound semiconvergent; they bracket t
            let t_max = (&bound - &q_prev) / &q;
            let convergent = Rational::new(p.clone(), q.clone());
            let best = if t_max.is_zero() {
                convergent
            } else {
                let semi = Rational::new(&t_max * &p + &p_prev, &t_max * &q + &q_prev);
                let d_conv = (&t - &convergent).abs();
                let d_semi = (&t - &semi).abs();
                if d_semi < d_conv {
                    semi
                } else if d_conv < d_semi {
                    convergent
                } else if semi.denom() < convergent.denom() {
                    semi
                } else {
                    convergent
                }
            };
            return if negative { -best } else { best };
        }
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let best = Rational::new(p, q);
    if negative {
        -best
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::party::PartySet;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn parties(n: u32) -> PartySet {
        PartySet::new(n).unwrap()
    }

    fn vector(n: u32, vals: &[Rational]) -> EntropyVector {
        EntropyVector::new(parties(n), vals.to_vec()).unwrap()
    }

    #[test]
    fn ghz3_vector_decomposes_into_half_weight_triangle() {
        let ones = |k: i64| rat_int(k);
        let v = vector(
            3,
            &[ones(1), ones(1), ones(1), ones(1), ones(1), ones(1), ones(0)],
        );
        match decide(&v) {
            Membership::Member(g) => {
                assert_eq!(g.pair_weight(1, 2), rat(1, 2));
                assert_eq!(g.pair_weight(1, 3), rat(1, 2));
                assert_eq!(g.pair_weight(2, 3), rat(1, 2));
                for i in 1..=3 {
                    assert_eq!(g.env_weight(i), rat_int(0));
                }
            }
            other => panic!("expected member, got {other:?}"),
        }
    }

    #[test]
    fn all_ones_v3_violates_the_parity_equality() {
        let v = vector(3, &vec![rat_int(1); 7]);
        match decide(&v) {
            Membership::NotInSpan { equality, value } => {
                assert_eq!(value, rat_int(1));
                assert_eq!(equality.coefficient(0b111), rat_int(1));
            }
            other => panic!("expected not-in-span, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_recovers_the_graph() {
        let mut g = EprGraph::new(parties(3));
        g.set_pair(1, 2, rat_int(2)).unwrap();
        g.set_env(3, rat_int(1)).unwrap();
        match decide(&g.entropy_vector()) {
            Membership::Member(recovered) => assert_eq!(recovered, g),
            other => panic!("expected member, got {other:?}"),
        }
    }

    #[test]
    fn negative_coefficient_witness_is_first_in_generator_order() {
        // (2, 1, 5) at n=2: n_12 = -1, N_1 = 3, N_2 = 2 -> e_1_2 negative.
        let v = vector(2, &[rat_int(2), rat_int(1), rat_int(5)]);
        match decide(&v) {
            Membership::NegativeCoefficient { generator, index, coefficient } => {
                assert_eq!(generator, Generator::Pair(1, 2));
                assert_eq!(index, 0);
                assert_eq!(coefficient, rat_int(-1));
            }
            other => panic!("expected negative coefficient, got {other:?}"),
        }
    }

    #[test]
    fn two_party_closed_form() {
        // decide at n=2 must agree with the closed form
        // n_12 = (S_1+S_2-S_12)/2, N_1 = (S_1-S_2+S_12)/2, N_2 = (-S_1+S_2+S_12)/2.
        let cases = [
            (rat_int(3), rat_int(2), rat_int(3)),
            (rat(1, 2), rat(1, 2), rat_int(0)),
            (rat(7, 3), rat(5, 3), rat_int(4)),
        ];
        for (s1, s2, s12) in cases {
            let v = vector(2, &[s1.clone(), s2.clone(), s12.clone()]);
            let n12 = (&s1 + &s2 - &s12) / rat_int(2);
            let n1 = (&s1 - &s2 + &s12) / rat_int(2);
            let n2 = (-&s1 + &s2 + &s12) / rat_int(2);
            match decide(&v) {
                Membership::Member(g) => {
                    assert!(!n12.is_negative() && !n1.is_negative() && !n2.is_negative());
                    assert_eq!(g.pair_weight(1, 2), n12);
                    assert_eq!(g.env_weight(1), n1);
                    assert_eq!(g.env_weight(2), n2);
                }
                _ => {
                    assert!(n12.is_negative() || n1.is_negative() || n2.is_negative());
                }
            }
        }
    }

    #[test]
    fn best_rational_approx_basics() {
        let half = rat(1, 2);
        assert_eq!(best_rational_approx(&half, 1 << 20), half);

        // 0.9999999995 snaps to 1 within a 2^20 denominator bound
        let near_one = rational_from_f64(0.9999999995).unwrap();
        assert_eq!(best_rational_approx(&near_one, 1 << 20), rat_int(1));

        // nearest to 0.123456 with denominator <= 10 is 1/8
        let x = rational_from_f64(0.123456).unwrap();
        assert_eq!(best_rational_approx(&x, 10), rat(1, 8));

        // negative values mirror
        let neg = rational_from_f64(-0.123456).unwrap();
        assert_eq!(best_rational_approx(&neg, 10), rat(-1, 8));

        // pi with the classic denominator bounds
        let pi = rational_from_f64(std::f64::consts::PI).unwrap();
        assert_eq!(best_rational_approx(&pi, 10), rat(22, 7));
        assert_eq!(best_rational_approx(&pi, 150), rat(355, 113));
    }

    #[test]
    fn decide_approx_snaps_bell_vector() {
        let eps = 1e-10;
        let v = FloatEntropyVector::new(parties(2), vec![1.0 - eps, 1.0 - eps, 0.0 + eps], 1e-9)
            .unwrap();
        let decision = decide_approx(&v, &SnapOptions::default()).unwrap();
        assert!(decision.max_residual <= 1e-9);
        match decision.membership {
            Membership::Member(g) => assert_eq!(g.pair_weight(1, 2), rat_int(1)),
            other => panic!("expected member, got {other:?}"),
        }
    }

    #[test]
    fn decide_approx_rejects_far_components() {
        let v = FloatEntropyVector::new(parties(1), vec![0.123456], 1e-9).unwrap();
        let err = decide_approx(&v, &SnapOptions { tol: 1e-6, max_denominator: 10 }).unwrap_err();
        match err {
            Error::Unresolvable { residual, .. } => assert!(residual > 1e-6),
            other => panic!("expected unresolvable, got {other}"),
        }
    }

    #[test]
    fn decide_approx_matches_decide_on_exact_floats() {
        let mut g = EprGraph::new(parties(3));
        g.set_pair(1, 3, rat(3, 4)).unwrap();
        g.set_env(2, rat(5, 2)).unwrap();
        let exact = g.entropy_vector();
        let float = exact.to_float(1e-9);
        let decision = decide_approx(&float, &SnapOptions::default()).unwrap();
        assert_eq!(decision.max_residual, 0.0);
        match decision.membership {
            Membership::Member(recovered) => assert_eq!(recovered, g),
            other => panic!("expected member, got {other:?}"),
        }
    }

    fn arb_weight() -> impl Strategy<Value = Rational> {
        (0i64..=100, 1i64..=100).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_graph(n: u32) -> impl Strategy<Value = EprGraph> {
        let p = parties(n);
        let count = (n * (n - 1) / 2 + n) as usize;
        proptest::collection::vec(arb_weight(), count).prop_map(move |ws| {
            let mut g = EprGraph::new(p);
            let mut it = ws.into_iter();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    g.set_pair(i, j, it.next().unwrap()).unwrap();
                }
            }
            for i in 1..=n {
                g.set_env(i, it.next().unwrap()).unwrap();
            }
            g
        })
    }

    /// Relabels parties of a vector by a permutation (party i of the
    /// input becomes perm[i-1] of the output).
    fn permute_vector(v: &EntropyVector, perm: &[u32]) -> EntropyVector {
        let p = v.parties();
        let map_mask = |m: u64| -> u64 {
            let mut out = 0u64;
            for i in 1..=p.n() {
                if m >> (i - 1) & 1 == 1 {
                    out |= 1 << (perm[i as usize - 1] - 1);
                }
            }
            out
        };
        let mut values = vec![Rational::zero(); p.subset_count()];
        for (m, val) in v.iter() {
            values[map_mask(m) as usize - 1] = val.clone();
        }
        EntropyVector::new(p, values).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Round trip across party counts.
        #[test]
        fn random_graphs_round_trip(n in 2u32..=5, seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
            let g = crate::sampling::random_graph(&mut rng, parties(n), 100, 100);
            match decide(&g.entropy_vector()) {
                Membership::Member(recovered) => prop_assert_eq!(recovered, g),
                other => return Err(TestCaseError::fail(format!("not a member: {other:?}"))),
            }
        }

        /// Single-component bumps at n >= 3 always leave the span.
        #[test]
        fn unit_perturbations_are_refuted(g in arb_graph(3), mask in 1u64..=7) {
            let v = g.entropy_vector();
            let mut values = v.values().to_vec();
            values[mask as usize - 1] += rat_int(1);
            let bumped = EntropyVector::new(parties(3), values).unwrap();
            match decide(&bumped) {
                Membership::NotInSpan { .. } => {}
                other => return Err(TestCaseError::fail(format!("expected refutation: {other:?}"))),
            }
        }

        /// decide commutes with party relabeling.
        #[test]
        fn decide_is_permutation_equivariant(g in arb_graph(3), shift in 0u32..3) {
            // cyclic permutations of (1,2,3)
            let perm: Vec<u32> = (0..3).map(|i| (i + shift) % 3 + 1).collect();
            let v = g.entropy_vector();
            let pv = permute_vector(&v, &perm);
            match (decide(&v), decide(&pv)) {
                (Membership::Member(a), Membership::Member(b)) => {
                    // b must be a relabeled, and the vectors must agree
                    prop_assert_eq!(permute_vector(&a.entropy_vector(), &perm), b.entropy_vector());
                }
                (a, b) => return Err(TestCaseError::fail(format!("mismatch: {a:?} vs {b:?}"))),
            }
        }
    }
}
