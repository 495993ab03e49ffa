//! Small algebras used throughout the worked examples and tests.

use super::finite::FiniteAlgebra;
use super::signature::Signature;

/// The ternary discriminator: `a` when `a != b`, otherwise `c`.
pub fn disc(a: usize, b: usize, c: usize) -> usize {
    if a != b {
        a
    } else {
        c
    }
}

fn build(pairs: &[(&str, usize)], size: usize, f: impl FnMut(usize, &[usize]) -> usize) -> FiniteAlgebra {
    let sig = Signature::from_pairs(pairs).expect("catalog signature");
    FiniteAlgebra::from_fn(sig, size, f).expect("catalog algebra")
}

/// `({0,1}, ∧)` with `∧ = min`.
pub fn semilattice() -> FiniteAlgebra {
    build(&[("meet", 2)], 2, |_, a| a[0].min(a[1]))
}

pub fn trivial_semilattice() -> FiniteAlgebra {
    build(&[("meet", 2)], 1, |_, _| 0)
}

/// `({0,1}, ∧, ∨, ¬)`.
pub fn boolean_algebra() -> FiniteAlgebra {
    build(&[("meet", 2), ("join", 2), ("neg", 1)], 2, |op, a| match op {
        0 => a[0].min(a[1]),
        1 => a[0].max(a[1]),
        _ => 1 - a[0],
    })
}

/// `({0,..,n-1}, d)` with `d` the discriminator.
pub fn pure_disc(n: usize) -> FiniteAlgebra {
    build(&[("d", 3)], n, |_, a| disc(a[0], a[1], a[2]))
}

/// `({0,..,n-1}, d, c0, c1)` with constants `c0 = 0`, `c1 = 1`.
pub fn disc_with_constants(n: usize) -> FiniteAlgebra {
    build(&[("d", 3), ("c0", 0), ("c1", 0)], n, |op, a| match op {
        0 => disc(a[0], a[1], a[2]),
        1 => 0,
        _ => 1,
    })
}

pub fn two_element_disc() -> FiniteAlgebra {
    pure_disc(2)
}

pub fn three_element_disc() -> FiniteAlgebra {
    pure_disc(3)
}

pub fn two_element_disc_with_constants() -> FiniteAlgebra {
    disc_with_constants(2)
}

pub fn three_element_disc_with_constants() -> FiniteAlgebra {
    disc_with_constants(3)
}

/// Two commuting idempotent unary operations plus the discriminator.
///
/// Returns `[A_d, B_d]`: `A_d` has carrier `{a=0, b=1}` with `f_i(x) = 1`;
/// `B_d` is the one-generated free algebra of the `f`-theory,
/// `{x=0, f0 x=1, f1 x=2, f0 f1 x=3}`.
pub fn idempotent_example() -> Vec<FiniteAlgebra> {
    let pairs = [("f0", 1), ("f1", 1), ("d", 3)];
    let a = build(&pairs, 2, |op, a| match op {
        0 | 1 => 1,
        _ => disc(a[0], a[1], a[2]),
    });
    // Bit 0 records f0, bit 1 records f1.
    let b = build(&pairs, 4, |op, a| match op {
        0 => a[0] | 1,
        1 => a[0] | 2,
        _ => disc(a[0], a[1], a[2]),
    });
    vec![a, b]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_matches_definition() {
        assert_eq!(disc(2, 0, 1), 2);
        assert_eq!(disc(0, 0, 1), 1);
    }

    #[test]
    fn idempotent_example_satisfies_f_theory() {
        for alg in idempotent_example() {
            for x in 0..alg.size() {
                for i in 0..2 {
                    let fi = alg.apply(i, &[x]);
                    assert_eq!(alg.apply(i, &[fi]), fi);
                    for j in 0..2 {
                        let fj = alg.apply(j, &[x]);
                        assert_eq!(alg.apply(i, &[fj]), alg.apply(j, &[fi]));
                    }
                }
            }
        }
    }
}
