//! Univariate polynomials over a field, just enough for characteristic
//! polynomials and the factor search in the MeatAxe.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.

use crate::field::Field;
use crate::matrix::Mat;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Poly::new(field, Vec::new())
    }
    pub fn one(field: &F) -> Self {
        Poly::new(field, vec![field.one()])
    }
    /// The monomial `x`.
    pub fn x(field: &F) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }
    /// `x - a`.
    pub fn linear(field: &F, a: &F::Elem) -> Self {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    fn lead(&self) -> &F::Elem {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).unwrap();
        let c = self.coeffs.iter().map(|a| self.field.mul(&inv, a)).collect();
        Poly::new(&self.field, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
                let b = other.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
                f.sub(&a, &b)
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut c[i..i + other.coeffs.len()], a, &other.coeffs);
        }
        Poly::new(f, c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lead()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if !f.is_zero(&c) {
                let neg = f.neg(&c);
                f.axpy(&mut r[k..k + dd + 1], &neg, &d.coeffs);
                q[k] = c;
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Mat<F>) -> Mat<F> {
        let f = &self.field;
        let n = a.rows();
        let mut acc = Mat::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub fn charpoly<F: Field>(a: &Mat<F>) -> Poly<F> {
    assert!(a.is_square());
    let f = a.field().clone();
    let n = a.rows();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let c = m - 1;
        let Some(i) = (m..n).find(|&i| !f.is_zero(h.get(i, c))) else {
            continue;
        };
        if i != m {
            for j in 0..n {
                let (x, y) = (h.get(i, j).clone(), h.get(m, j).clone());
                h.set(i, j, y);
                h.set(m, j, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, i).clone(), h.get(r, m).clone());
                h.set(r, i, y);
                h.set(r, m, x);
            }
        }
        let t_inv = f.inv(h.get(m, c)).unwrap();
        for i in m + 1..n {
            let u = f.mul(h.get(i, c), &t_inv);
            if f.is_zero(&u) {
                continue;
            }
            // row_i -= u row_m ; col_m += u col_i
            for j in 0..n {
                let v = f.sub(h.get(i, j), &f.mul(&u, h.get(m, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, m), &f.mul(&u, h.get(r, i)));
                h.set(r, m, v);
            }
        }
    }
    // recurrence on leading principal minors, 1-based as in the textbook
    let hh = |i: usize, j: usize| h.get(i - 1, j - 1).clone();
    let mut ps: Vec<Poly<F>> = vec![Poly::one(&f)];
    for m in 1..=n {
        let mut pm = Poly::linear(&f, &hh(m, m)).mul(&ps[m - 1]);
        let mut t = f.one();
        for i in 1..m {
            t = f.mul(&t, &hh(m - i + 1, m - i));
            let coef = f.mul(&t, &hh(m - i, m));
            pm = pm.sub(&ps[m - i - 1].mul(&Poly::new(&f, vec![coef])));
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}

/// Distinct-degree parts of a polynomial over GF(q): for each `d` up to
/// `max_degree`, the product of the distinct monic irreducible factors of
/// degree exactly `d` (omitted when there are none).
pub fn distinct_degree_parts<F: Field>(c: &Poly<F>, max_degree: usize) -> Vec<(usize, Poly<F>)> {
    let f = &c.field;
    let q = f.order().expect("finite field");
    let mut rest = c.monic();
    let x = Poly::x(f);
    let mut xq = x.clone(); // x^(q^d) mod rest, updated lazily
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 1 && d < max_degree {
        d += 1;
        xq = xq.pow_mod(q, &rest);
        let g = xq.sub(&x).rem(&rest).gcd(&rest);
        if g.degree().unwrap_or(0) >= 1 {
            // strip every power of the factors of g
            let mut h = g.clone();
            while h.degree().unwrap_or(0) >= 1 {
                rest = rest.div_rem(&h).0;
                h = rest.gcd(&h);
            }
            out.push((d, g));
            if rest.degree().unwrap_or(0) >= 1 {
                xq = xq.rem(&rest);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use rand::SeedableRng;

    /// Determinant by elimination, independent of the Hessenberg path.
    fn det<F: Field>(m: &Mat<F>) -> F::Elem {
        let f = m.field().clone();
        let n = m.rows();
        let mut a = m.clone();
        let mut d = f.one();
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| !f.is_zero(a.get(r, c))) else {
                return f.zero();
            };
            if r != c {
                for j in 0..n {
                    let (x, y) = (a.get(r, j).clone(), a.get(c, j).clone());
                    a.set(r, j, y);
                    a.set(c, j, x);
                }
                d = f.neg(&d);
            }
            let piv = a.get(c, c).clone();
            d = f.mul(&d, &piv);
            let inv = f.inv(&piv).unwrap();
            for r2 in c + 1..n {
                let u = f.mul(a.get(r2, c), &inv);
                for j in 0..n {
                    let v = f.sub(a.get(r2, j), &f.mul(&u, a.get(c, j)));
                    a.set(r2, j, v);
                }
            }
        }
        d
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        let f = Fp::new(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..7 {
            for _ in 0..5 {
                let a = Mat::from_fn(&f, n, n, |_, _| f.random(&mut rng));
                let c = charpoly(&a);
                assert_eq!(c.degree(), Some(n));
                assert!(f.is_one(c.coeffs().last().unwrap()));
                for lam in 0..5u32 {
                    let shifted = Mat::identity(&f, n).scale(&lam).sub(&a);
                    assert_eq!(c.eval(&lam), det(&shifted));
                }
                // Cayley-Hamilton
                assert!(c.eval_matrix(&a).is_zero());
            }
        }
    }

    #[test]
    fn distinct_degree_split() {
        let f = Fp::new(2).unwrap();
        // x^2 (x^2+x+1) (x+1)
        let x2 = Poly::new(&f, vec![0, 0, 1]);
        let q = Poly::new(&f, vec![1, 1, 1]);
        let l = Poly::new(&f, vec![1, 1]);
        let c = x2.mul(&q).mul(&l);
        let parts = distinct_degree_parts(&c, 10);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (1, Poly::new(&f, vec![0, 1, 1])));
        assert_eq!(parts[1], (2, q));
    }

    #[test]
    fn gcd_and_division() {
        let f = Fp::new(7).unwrap();
        let a = Poly::new(&f, vec![6, 0, 1]); // x^2 - 1
        let b = Poly::new(&f, vec![1, 1]); // x + 1
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, Poly::new(&f, vec![6, 1]));
    }
}
