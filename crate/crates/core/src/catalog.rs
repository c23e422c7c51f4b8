//! Bundled small semigroups and groups used by tests, the acceptance suite and
//! the CLI.

use crate::action::TpaParts;
use crate::multiplier::inner_multiplier;
use crate::semigroup::{Clifford, FiniteGroup, FiniteSemigroup};
use crate::sigma::PartialIso;
use std::sync::Arc;

fn table(order: usize, f: impl Fn(usize, usize) -> usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(order, f).expect("bundled table is associative")
}

pub fn trivial() -> FiniteSemigroup {
    table(1, |_, _| 0)
}

/// Z/n under addition; 0 is the identity.
pub fn cyclic(n: usize) -> FiniteSemigroup {
    table(n, |a, b| (a + b) % n)
}

/// Z/2 × Z/2 with elements `2a + b`.
pub fn klein() -> FiniteSemigroup {
    table(4, |a, b| a ^ b)
}

/// The chain `0 < 1 < ... < n-1` under minimum; 0 is the zero.
pub fn chain(n: usize) -> FiniteSemigroup {
    table(n, |a, b| a.min(b))
}

/// Two incomparable idempotents over a zero: `{0, e, f}` with `ef = 0`.
pub fn vee() -> FiniteSemigroup {
    table(3, |a, b| if a == b { a } else { 0 })
}

/// `{0, e, f, 1}` with `ef = 0` and 1 on top.
pub fn diamond() -> FiniteSemigroup {
    table(4, |a, b| match (a, b) {
        (3, x) | (x, 3) => x,
        (x, y) if x == y => x,
        _ => 0,
    })
}

/// Z/2 with an adjoined zero: 0 is the zero, 1 the identity, 2 the generator.
pub fn k3() -> FiniteSemigroup {
    cyclic(2).with_zero()
}

/// Z/3 with an adjoined zero.
pub fn z3_with_zero() -> FiniteSemigroup {
    cyclic(3).with_zero()
}

const S3_PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];

/// The symmetric group on three points; 0 is the identity, 1 and 2 the
/// three-cycles, 3..6 the transpositions. Product is `(p q)(x) = p(q(x))`.
pub fn s3() -> FiniteSemigroup {
    table(6, |a, b| {
        let p = S3_PERMS[a];
        let q = S3_PERMS[b];
        let r = [p[q[0]], p[q[1]], p[q[2]]];
        S3_PERMS.iter().position(|x| *x == r).unwrap()
    })
}

/// S3 with an adjoined zero: 0 is the zero, 1 the identity, 2 and 3 the
/// three-cycles.
pub fn s3_with_zero() -> FiniteSemigroup {
    s3().with_zero()
}

/// `(S3⁰)¹`: S3⁰ with a further identity adjoined at index 7.
pub fn s3_with_zero_and_one() -> FiniteSemigroup {
    s3_with_zero().with_identity()
}

pub fn left_zero(n: usize) -> FiniteSemigroup {
    table(n, |a, _| a)
}

pub fn right_zero(n: usize) -> FiniteSemigroup {
    table(n, |_, b| b)
}

/// All products equal 0.
pub fn null(n: usize) -> FiniteSemigroup {
    table(n, |_, _| 0)
}

/// Z/n under multiplication.
pub fn multiplicative(n: usize) -> FiniteSemigroup {
    table(n, |a, b| a * b % n)
}

/// Full transformation monoid on two points, maps encoded as `2 f(0) + f(1)`,
/// composed left to right.
pub fn t2() -> FiniteSemigroup {
    let decode = |x: usize| [x / 2, x % 2];
    table(4, |a, b| {
        let (f, g) = (decode(a), decode(b));
        2 * g[f[0]] + g[f[1]]
    })
}

/// Monogenic `{a, a², a³}` with `a⁴ = a²`.
pub fn monogenic_2_2() -> FiniteSemigroup {
    // element i is a^(i+1)
    let reduce = |k: usize| if k <= 3 { k } else { 2 + (k - 2) % 2 };
    table(3, |x, y| reduce(x + y + 2) - 1)
}

/// 2×2 rectangular band `(i,j)(k,l) = (i,l)`, elements `2i + j`.
pub fn rectangular_band() -> FiniteSemigroup {
    table(4, |a, b| 2 * (a / 2) + b % 2)
}

/// Brandt semigroup B2: 0 and matrix units `(i,j)` at `1 + 2i + j`.
pub fn brandt2() -> FiniteSemigroup {
    table(5, |a, b| {
        if a == 0 || b == 0 {
            return 0;
        }
        let (i, j) = ((a - 1) / 2, (a - 1) % 2);
        let (k, l) = ((b - 1) / 2, (b - 1) % 2);
        if j == k {
            1 + 2 * i + l
        } else {
            0
        }
    })
}

/// Z/2 × (2-chain), elements `2g + y`; a Clifford semigroup with two components.
pub fn z2_times_chain2() -> FiniteSemigroup {
    cyclic(2).direct_product(&chain(2))
}

/// Every bundled semigroup of order at most five.
pub fn small_semigroups() -> Vec<(&'static str, FiniteSemigroup)> {
    vec![
        ("trivial", trivial()),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z5", cyclic(5)),
        ("Z2xZ2", klein()),
        ("chain2", chain(2)),
        ("chain3", chain(3)),
        ("chain4", chain(4)),
        ("vee", vee()),
        ("diamond", diamond()),
        ("K3", k3()),
        ("Z3^0", z3_with_zero()),
        ("Z2^1", cyclic(2).with_identity()),
        ("left-zero2", left_zero(2)),
        ("left-zero3", left_zero(3)),
        ("right-zero2", right_zero(2)),
        ("null2", null(2)),
        ("null3", null(3)),
        ("mult-Z3", multiplicative(3)),
        ("mult-Z4", multiplicative(4)),
        ("mult-Z5", multiplicative(5)),
        ("T2", t2()),
        ("monogenic(2,2)", monogenic_2_2()),
        ("rect-band2x2", rectangular_band()),
        ("B2", brandt2()),
        ("Z2xchain2", z2_times_chain2()),
    ]
}

pub fn group(s: FiniteSemigroup) -> FiniteGroup {
    FiniteGroup::new(Arc::new(s)).expect("bundled group table")
}

/// Builds twisted partial action parts from `(x, θ_x(x))` pairs per group
/// element and inner twists `w_{g,h} = φ_s` for the listed `(g, h, s)`.
fn tpa_parts(s: FiniteSemigroup, g: FiniteGroup, maps: &[Vec<(usize, usize)>], twists: &[(usize, usize, usize)]) -> TpaParts {
    let s = Arc::new(s);
    let a = Arc::new(Clifford::new(s.clone()).expect("bundled Clifford semigroup"));
    let theta: Vec<PartialIso> = maps
        .iter()
        .map(|pairs| PartialIso::from_pairs(&s, pairs).expect("bundled partial isomorphism"))
        .collect();
    let mut parts = TpaParts::untwisted(a, g, theta).expect("bundled action shape");
    let n = parts.group.order();
    for &(x, y, el) in twists {
        let slot = &mut parts.twist[x * n + y];
        *slot = inner_multiplier(slot.carrier(), el).expect("bundled inner twist");
    }
    parts
}

fn identity_pairs(xs: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
    xs.into_iter().map(|x| (x, x)).collect()
}

fn map_pairs(xs: impl IntoIterator<Item = usize>, f: impl Fn(usize) -> usize) -> Vec<(usize, usize)> {
    xs.into_iter().map(|x| (x, f(x))).collect()
}

/// Bundled twisted partial actions, global and partial, twisted and not.
/// Parts are unvalidated; every entry is expected to pass validation.
pub fn tpa_corpus() -> Vec<(&'static str, TpaParts)> {
    let z2 = || group(cyclic(2));
    let s3z = s3_with_zero();
    // conjugation by the three-cycle 2 of S3⁰; its square is 3
    let conj = |x: usize| s3z.mul(s3z.mul(2, x), 3);
    vec![
        ("trivial group on K3", tpa_parts(k3(), group(trivial()), &[identity_pairs(0..3)], &[])),
        ("Z2 trivially on Z2", tpa_parts(cyclic(2), z2(), &[identity_pairs(0..2), identity_pairs(0..2)], &[])),
        (
            "Z2 trivially on Z2, twisted",
            tpa_parts(cyclic(2), z2(), &[identity_pairs(0..2), identity_pairs(0..2)], &[(1, 1, 1)]),
        ),
        (
            "Z2 inverting Z3",
            tpa_parts(cyclic(3), z2(), &[identity_pairs(0..3), map_pairs(0..3, |x| (3 - x) % 3)], &[]),
        ),
        (
            "Z2 trivially on Z4, twisted",
            tpa_parts(cyclic(4), z2(), &[identity_pairs(0..4), identity_pairs(0..4)], &[(1, 1, 1)]),
        ),
        (
            "Z2 inverting Z4, twisted",
            tpa_parts(cyclic(4), z2(), &[identity_pairs(0..4), map_pairs(0..4, |x| (4 - x) % 4)], &[(1, 1, 2)]),
        ),
        (
            "Z2 swapping Klein",
            tpa_parts(klein(), z2(), &[identity_pairs(0..4), map_pairs(0..4, |x| [0, 2, 1, 3][x])], &[]),
        ),
        (
            "Z2 partially on K3",
            tpa_parts(k3(), z2(), &[identity_pairs(0..3), identity_pairs([0])], &[]),
        ),
        (
            "Z2 partially on chain2",
            tpa_parts(chain(2), z2(), &[identity_pairs(0..2), identity_pairs([0])], &[]),
        ),
        (
            "Z2 partially on Z2 x chain2, twisted",
            tpa_parts(z2_times_chain2(), z2(), &[identity_pairs(0..4), identity_pairs([0, 2])], &[(1, 1, 2)]),
        ),
        (
            "Z2 conjugating S3^0, twisted",
            tpa_parts(s3z.clone(), z2(), &[identity_pairs(0..7), map_pairs(0..7, conj)], &[(1, 1, 3)]),
        ),
        (
            "Z2 partially conjugating (S3^0)^1, twisted",
            tpa_parts(
                s3_with_zero_and_one(),
                z2(),
                &[identity_pairs(0..8), map_pairs(0..7, conj)],
                &[(1, 1, 3)],
            ),
        ),
        (
            "Z3 trivially on Z2",
            tpa_parts(cyclic(2), group(cyclic(3)), &[identity_pairs(0..2), identity_pairs(0..2), identity_pairs(0..2)], &[]),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::analyze_inverse;

    #[test]
    fn corpus_is_large_enough_and_valid() {
        let all = small_semigroups();
        assert!(all.len() >= 20);
        for (name, s) in &all {
            assert!(s.order() <= 5, "{name}");
            assert!(FiniteSemigroup::from_rows(&s.rows()).is_ok(), "{name}");
        }
    }

    #[test]
    fn expected_inverse_semigroups() {
        let inverse: Vec<&str> = small_semigroups()
            .into_iter()
            .filter(|(_, s)| analyze_inverse(s).is_ok())
            .map(|(n, _)| n)
            .collect();
        for n in ["Z2", "chain3", "vee", "diamond", "K3", "B2", "Z2xchain2", "Z2^1"] {
            assert!(inverse.contains(&n), "{n}");
        }
        for n in ["T2", "null2", "left-zero2", "rect-band2x2"] {
            assert!(!inverse.contains(&n), "{n}");
        }
    }

    #[test]
    fn tpa_corpus_validates() {
        let corpus = tpa_corpus();
        assert!(corpus.len() >= 10);
        assert!(corpus.iter().filter(|(_, p)| p.twist.iter().any(|w| !w.is_identity())).count() >= 3);
        for (name, parts) in corpus {
            if let Err(e) = crate::action::validate_tpa(parts) {
                panic!("{name}: {e}");
            }
        }
    }

    #[test]
    fn s3_structure() {
        let s = s3();
        assert_eq!(s.identity(), Some(0));
        assert!(!s.is_commutative());
        assert_eq!(s.mul(1, 1), 2);
        assert_eq!(s.mul(1, 2), 0);
        assert_eq!(s3_with_zero_and_one().identity(), Some(7));
    }
}
