//! Genus characters `χ_Δ` on binary quadratic forms and on vectors of the dual lattice.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::BQF;
use crate::arith::rational::{factorize, kronecker, Rational};

fn legendre_odd(u: i64, p: i64) -> i32 {
    kronecker(u, p)
}

/// The `p`-adic Hilbert symbol `(a, b)_p` of nonzero integers.
pub fn hilbert_symbol(a: i64, b: i64, p: i64) -> i32 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    let split = |mut x: i64| {
        let mut v = 0u32;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        (v, x)
    };
    let (al, u) = split(a);
    let (be, v) = split(b);
    if p == 2 {
        let eps = |x: i64| (x.rem_euclid(4) == 3) as u32;
        let omega = |x: i64| matches!(x.rem_euclid(8), 3 | 5) as u32;
        let e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s = if (al * be) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
        if be % 2 == 1 {
            s *= legendre_odd(u, p);
        }
        if al % 2 == 1 {
            s *= legendre_odd(v, p);
        }
        s
    }
}

/// `χ_Δ([a,b,c])` as the product over `p | Δ` of the local symbols
/// `(a, Δ)_p` if `p ∤ a`, `(c, Δ)_p` if `p ∤ c`, and `0` otherwise.
pub fn genus_character_local(delta: i64, f: &BQF) -> i32 {
    if delta == 1 {
        return 1;
    }
    if f.disc() % delta != 0 {
        return 0;
    }
    let mut chi = 1;
    for (p, _) in factorize(delta.unsigned_abs()) {
        let p = p as i64;
        chi *= if f.a % p != 0 {
            hilbert_symbol(f.a, delta, p)
        } else if f.c % p != 0 {
            hilbert_symbol(f.c, delta, p)
        } else {
            0
        };
        if chi == 0 {
            return 0;
        }
    }
    chi
}

/// `χ_Δ(f)`: zero unless `Δ | disc(f)` and `gcd(a,b,c,Δ) = 1`; otherwise the Kronecker
/// symbol `(Δ/n)` for a value `n` represented by `f` and coprime to `Δ`.
///
/// Represented values are searched over `|x|, |y| ≤ |Δ| + |disc f|`; if the search
/// finds nothing the local product formula decides.  When `disc(f)/Δ` is not itself
/// a discriminant the Kronecker symbol is not constant on represented values, and
/// the local product (the definition of record) is returned directly.
pub fn genus_character(delta: i64, f: &BQF) -> i32 {
    if delta == 1 {
        return 1;
    }
    if f.disc() % delta != 0 || f.content().gcd(&delta) != 1 {
        return 0;
    }
    if !matches!((f.disc() / delta).rem_euclid(4), 0 | 1) {
        return genus_character_local(delta, f);
    }
    let bound = delta.abs() + f.disc().abs();
    for r in 0..=bound {
        for x in -r..=r {
            for y in [-r, r] {
                for (x, y) in [(x, y), (y, x)] {
                    let n = f.eval(x, y);
                    if n != 0 && n.gcd(&delta) == 1 {
                        return kronecker(delta, n);
                    }
                }
            }
        }
    }
    genus_character_local(delta, f)
}

/// `χ_Δ` on a vector `(a, b, c)` of the dual lattice (ambient coordinates);
/// zero off the dual lattice.  For `Δ = 1` the character is trivial (identically 1, also on the zero vector).
pub fn genus_character_vector(delta: i64, v: &[Rational]) -> i32 {
    if delta == 1 {
        return 1;
    }
    if v.len() != 3 || v.iter().any(|x| !x.is_integer()) {
        return 0;
    }
    let c: Vec<i64> = v.iter().map(|x| x.to_integer().to_i64().unwrap_or(0)).collect();
    if c.iter().all(|x| x.is_zero()) {
        return 0;
    }
    genus_character(delta, &BQF::new(c[0], c[1], c[2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        assert_eq!(genus_character(-3, &BQF::new(1, 1, 1)), 1);
        assert_eq!(genus_character(1, &BQF::new(2, 1, 3)), 1);
        assert_eq!(genus_character(-3, &BQF::new(3, 3, 3)), 0);
        assert_eq!(genus_character(-3, &BQF::new(1, 1, 6)), 0);
    }

    #[test]
    fn hilbert_symbols() {
        assert_eq!(hilbert_symbol(-1, -1, 2), -1);
        assert_eq!(hilbert_symbol(2, 3, 3), -1);
        assert_eq!(hilbert_symbol(5, 7, 3), 1);
    }

    #[test]
    fn search_agrees_with_local_product() {
        for delta in [-3i64, -4, -7, -8, 5, 8, 12, -15] {
            for a in -6..=6i64 {
                for b in -6..=6i64 {
                    for c in -6..=6i64 {
                        let f = BQF::new(a, b, c);
                        if f.disc() == 0 || (a == 0 && c == 0) || f.disc() % delta != 0 {
                            continue;
                        }
                        if !matches!((f.disc() / delta).rem_euclid(4), 0 | 1) {
                            continue;
                        }
                        assert_eq!(genus_character(delta, &f), genus_character_local(delta, &f), "Δ={delta} f={f}");
                    }
                }
            }
        }
    }
}
