//! Dirichlet characters modulo a prime, with exact window sums.
//!
//! A character mod prime `q` is represented by the smallest primitive root
//! `g` and an exponent `j`: on units, `chi(g^k) = e^{2 pi i jk/(q-1)}`. A
//! discrete-log table makes evaluation O(1); window sums reduce through
//! per-period prefix sums.

use num_complex::Complex64;

use crate::error::{BoundError, Result};
use crate::primes::{is_prime, mul_mod, smallest_primitive_root};

/// Largest tabulated modulus: the discrete-log table is O(q).
pub const MAX_TABULATED_Q: u64 = 10_000_000;

/// Largest window endpoint `max_char_sum` will scan.
pub const MAX_SCAN_N: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    q: u64,
    g: u64,
    j: u64,
    dlog: Vec<u32>,
    /// prefix[k] = sum_{n=1..k} chi(n) for k in 0..q, one full period
    period_prefix: Vec<Complex64>,
}

/// A window `[n0+1, n0+n1]` of consecutive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharSumQuery {
    pub n0: u64,
    pub n1: u64,
}

impl CharSumQuery {
    pub fn new(n0: u64, n1: u64) -> Result<CharSumQuery> {
        if n1 == 0 {
            return Err(BoundError::Input("window length n1 must be >= 1".into()));
        }
        Ok(CharSumQuery { n0, n1 })
    }
}

impl DirichletCharacter {
    /// Build the character mod prime `q` with exponent `j` in `[0, q-2]`.
    pub fn new(q: u64, j: u64) -> Result<DirichletCharacter> {
        if q < 3 || q > MAX_TABULATED_Q {
            return Err(BoundError::Resource(format!(
                "modulus {q} outside tabulated range [3, {MAX_TABULATED_Q}]"
            )));
        }
        if !is_prime(q) {
            return Err(BoundError::Input(format!("modulus {q} is not prime")));
        }
        if j > q - 2 {
            return Err(BoundError::Input(format!(
                "exponent {j} outside [0, {}]",
                q - 2
            )));
        }
        let g = smallest_primitive_root(q)
            .ok_or_else(|| BoundError::Input(format!("no primitive root mod {q}")))?;
        let mut dlog = vec![0u32; q as usize];
        let mut x = 1u64;
        for k in 0..q - 1 {
            dlog[x as usize] = k as u32;
            x = mul_mod(x, g, q);
        }
        let mut chi = DirichletCharacter {
            q,
            g,
            j,
            dlog,
            period_prefix: Vec::new(),
        };
        let mut prefix = Vec::with_capacity(q as usize);
        let mut acc = Complex64::new(0.0, 0.0);
        prefix.push(acc);
        for n in 1..q {
            acc += chi.eval_unit(n);
            prefix.push(acc);
        }
        chi.period_prefix = prefix;
        Ok(chi)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    pub fn exponent(&self) -> u64 {
        self.j
    }

    pub fn is_principal(&self) -> bool {
        self.j == 0
    }

    /// The complex conjugate character (exponent `q-1-j` mod `q-1`).
    pub fn conjugate(&self) -> Result<DirichletCharacter> {
        DirichletCharacter::new(self.q, (self.q - 1 - self.j) % (self.q - 1))
    }

    /// Unit-circle angle numerator: chi(n) = e^{2 pi i m/(q-1)} with
    /// m = j*dlog(n) mod (q-1); `None` when q divides n. Exact integer
    /// data, shared with high-precision oracles.
    pub fn angle_numerator(&self, n: u64) -> Option<u64> {
        let r = n % self.q;
        if r == 0 {
            return None;
        }
        Some(mul_mod(self.j, self.dlog[r as usize] as u64, self.q - 1))
    }

    fn eval_unit(&self, n: u64) -> Complex64 {
        match self.angle_numerator(n) {
            None => Complex64::new(0.0, 0.0),
            Some(m) => {
                let theta = 2.0 * std::f64::consts::PI * (m as f64) / ((self.q - 1) as f64);
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }

    pub fn eval(&self, n: u64) -> Complex64 {
        self.eval_unit(n)
    }

    /// Prefix sum over `[1, k]` for any `k >= 0`, via period reduction.
    pub fn prefix_sum(&self, k: u64) -> Complex64 {
        let full = k / self.q;
        let rem = (k % self.q) as usize;
        let mut s = self.period_prefix[rem];
        if full > 0 && self.j == 0 {
            // only the principal character has a nonzero period sum (q-1)
            s += Complex64::new((full * (self.q - 1)) as f64, 0.0);
        }
        s
    }
}

/// Exact (to floating precision) window sum over `[n0+1, n0+n1]`.
pub fn char_sum(chi: &DirichletCharacter, query: &CharSumQuery) -> Complex64 {
    chi.prefix_sum(query.n0 + query.n1) - chi.prefix_sum(query.n0)
}

/// The window with `n0 + n1 <= n_max` maximizing `|char_sum|`.
///
/// The prefix points `P[0..=n_max]` live in the complex plane and the
/// target is the diameter of that point set, found on the convex hull.
/// Ties break to the lexicographically smallest `(n0, n0+n1)` pair.
pub fn max_char_sum(
    chi: &DirichletCharacter,
    n_max: u64,
) -> Result<(CharSumQuery, f64)> {
    if n_max == 0 {
        return Err(BoundError::Input("n_max must be >= 1".into()));
    }
    if n_max > MAX_SCAN_N {
        return Err(BoundError::Resource(format!(
            "n_max {n_max} exceeds scan budget {MAX_SCAN_N}"
        )));
    }
    let pts: Vec<(f64, f64, u64)> = (0..=n_max)
        .map(|k| {
            let p = chi.prefix_sum(k);
            (p.re, p.im, k)
        })
        .collect();
    let hull = convex_hull(&pts);
    let mut best = (CharSumQuery { n0: 0, n1: 1 }, -1.0f64);
    for i in 0..hull.len() {
        for j in (i + 1)..hull.len() {
            let (ax, ay, ai) = hull[i];
            let (bx, by, bi) = hull[j];
            let d = (ax - bx).hypot(ay - by);
            let (lo, hi) = if ai < bi { (ai, bi) } else { (bi, ai) };
            if lo == hi {
                continue;
            }
            let cand = CharSumQuery {
                n0: lo,
                n1: hi - lo,
            };
            let better = d > best.1 + 1e-12
                || ((d - best.1).abs() <= 1e-12
                    && (cand.n0, cand.n0 + cand.n1) < (best.0.n0, best.0.n0 + best.0.n1));
            if better {
                best = (cand, d);
            }
        }
    }
    Ok(best)
}

/// Andrew monotone chain; keeps original indices for window recovery.
/// Collinear points are kept so index ties stay resolvable.
fn convex_hull(pts: &[(f64, f64, u64)]) -> Vec<(f64, f64, u64)> {
    let mut sorted: Vec<(f64, f64, u64)> = pts.to_vec();
    sorted.sort_by(|a, b| (a.0, a.1, a.2).partial_cmp(&(b.0, b.1, b.2)).unwrap());
    sorted.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    if sorted.len() <= 2 {
        return sorted;
    }
    let cross = |o: &(f64, f64, u64), a: &(f64, f64, u64), b: &(f64, f64, u64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(f64, f64, u64)> = Vec::new();
    for p in sorted.iter() {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) < 0.0 {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in sorted.iter().rev() {
        while hull.len() >= lower_len && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) < 0.0
        {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    hull
}

/// Brute-force window maximum, used as the oracle for `max_char_sum`.
pub fn max_char_sum_brute(
    chi: &DirichletCharacter,
    n_max: u64,
) -> Result<(CharSumQuery, f64)> {
    if n_max == 0 || n_max > 100_000 {
        return Err(BoundError::Resource("brute-force scan capped at 1e5".into()));
    }
    let prefixes: Vec<Complex64> = (0..=n_max).map(|k| chi.prefix_sum(k)).collect();
    let mut best = (CharSumQuery { n0: 0, n1: 1 }, -1.0f64);
    for a in 0..=n_max {
        for b in (a + 1)..=n_max {
            let d = (prefixes[b as usize] - prefixes[a as usize]).norm();
            if d > best.1 + 1e-12 {
                best = (CharSumQuery { n0: a, n1: b - a }, d);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_symbol_mod_5() {
        // exponent 2 mod 5 is the real quadratic character
        let chi = DirichletCharacter::new(5, 2).unwrap();
        let want = [1.0, -1.0, -1.0, 1.0];
        for (n, w) in (1..=4).zip(want) {
            let v = chi.eval(n);
            assert!((v.re - w).abs() < 1e-12 && v.im.abs() < 1e-12, "chi({n})");
            // cross-check against a direct quadratic-residue test
            let is_qr = (1..5).any(|x| x * x % 5 == n);
            assert_eq!(is_qr, w > 0.0);
        }
        assert_eq!(chi.eval(5), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn principal_character_sums_to_unit_count() {
        let chi = DirichletCharacter::new(13, 0).unwrap();
        let s = char_sum(&chi, &CharSumQuery::new(0, 12).unwrap());
        assert!((s.re - 12.0).abs() < 1e-12 && s.im.abs() < 1e-12);
    }

    #[test]
    fn orthogonality_over_full_period() {
        for j in 1..=11u64 {
            let chi = DirichletCharacter::new(13, j).unwrap();
            let s = char_sum(&chi, &CharSumQuery::new(0, 12).unwrap());
            assert!(s.norm() < 1e-10, "j={j}: |sum| = {}", s.norm());
        }
    }

    #[test]
    fn single_term_is_chi_of_one() {
        let chi = DirichletCharacter::new(13, 1).unwrap();
        let s = char_sum(&chi, &CharSumQuery::new(0, 1).unwrap());
        assert!((s.re - 1.0).abs() < 1e-15 && s.im.abs() < 1e-15);
    }

    #[test]
    fn multiplicativity_random_pairs() {
        let chi = DirichletCharacter::new(101, 3).unwrap();
        let mut state = 0x12345678u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 1000 + 1
        };
        for _ in 0..10_000 {
            let m = next();
            let n = next();
            let lhs = chi.eval(m * n % 101);
            let rhs = chi.eval(m) * chi.eval(n);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugate_symmetry_pointwise() {
        let chi = DirichletCharacter::new(101, 7).unwrap();
        let bar = chi.conjugate().unwrap();
        assert_eq!(bar.exponent(), 101 - 1 - 7);
        for n in 1..101 {
            let d = (chi.eval(n).conj() - bar.eval(n)).norm();
            assert!(d < 1e-12);
        }
    }

    #[test]
    fn prefix_sum_consistency() {
        let chi = DirichletCharacter::new(101, 1).unwrap();
        for (n0, n1) in [(0u64, 5u64), (3, 17), (99, 4), (100, 250), (250, 1000)] {
            let q = CharSumQuery::new(n0, n1).unwrap();
            let direct: Complex64 = (n0 + 1..=n0 + n1).map(|n| chi.eval(n)).sum();
            let viaprefix = char_sum(&chi, &q);
            assert!((direct - viaprefix).norm() < 1e-9);
        }
    }

    #[test]
    fn window_scan_matches_brute_force() {
        let chi = DirichletCharacter::new(101, 1).unwrap();
        let (q_fast, d_fast) = max_char_sum(&chi, 200).unwrap();
        let (q_brute, d_brute) = max_char_sum_brute(&chi, 200).unwrap();
        assert!((d_fast - d_brute).abs() < 1e-9);
        assert_eq!(
            char_sum(&chi, &q_fast).norm(),
            char_sum(&chi, &q_brute).norm()
        );
    }

    #[test]
    fn window_scan_mod_13() {
        let chi = DirichletCharacter::new(13, 1).unwrap();
        let (q_fast, d_fast) = max_char_sum(&chi, 12).unwrap();
        let (_, d_brute) = max_char_sum_brute(&chi, 12).unwrap();
        assert!((d_fast - d_brute).abs() < 1e-12);
        assert!(q_fast.n0 + q_fast.n1 <= 12);
    }

    #[test]
    fn principal_maximum_is_longest_window() {
        let chi = DirichletCharacter::new(13, 0).unwrap();
        let (q, d) = max_char_sum(&chi, 100).unwrap();
        // all unit terms are +1, so the best window is the whole range
        assert_eq!(q.n0, 0);
        assert_eq!(q.n1, 100);
        let expected = 100 - 100 / 13; // non-multiples of 13 in [1,100]
        assert!((d - expected as f64).abs() < 1e-9);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            DirichletCharacter::new(12, 1),
            Err(BoundError::Input(_))
        ));
        assert!(matches!(
            DirichletCharacter::new(MAX_TABULATED_Q + 7, 1),
            Err(BoundError::Resource(_))
        ));
        assert!(DirichletCharacter::new(13, 12).is_err()); // j > q-2
        assert!(CharSumQuery::new(0, 0).is_err());
    }

    #[test]
    fn scan_budget_enforced() {
        let chi = DirichletCharacter::new(13, 1).unwrap();
        assert!(matches!(
            max_char_sum(&chi, MAX_SCAN_N + 1),
            Err(BoundError::Resource(_))
        ));
    }
}
