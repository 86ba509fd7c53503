use super::csp::CspInstance;
use crate::classes::{affine_support, Z4Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::var_bit;

#[derive(Clone, PartialEq, Eq)]
struct Z2Row(Vec<u64>);

impl Z2Row {
    fn zero(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64).max(1)])
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, o: &Z2Row) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a ^= b;
        }
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(w, b)| w * 64 + b.trailing_zeros() as usize)
    }
}

/// `q0 + Σ lin_v y_v + 2 Σ_{v<w, cross} y_v y_w` over `ℤ₄`.
struct Quadratic {
    q0: u8,
    lin: Vec<u8>,
    cross: Vec<Z2Row>,
}

impl Quadratic {
    fn new(n: usize) -> Self {
        Self {
            q0: 0,
            lin: vec![0; n],
            cross: (0..n).map(|_| Z2Row::zero(n)).collect(),
        }
    }

    fn add_lin(&mut self, v: usize, c: u8) {
        self.lin[v] = (self.lin[v] + c) % 4;
    }

    /// Adds `c·y_v·y_w` for even `c`.
    fn add_cross(&mut self, v: usize, w: usize, c: u8) {
        debug_assert!(c.is_multiple_of(2));
        if c.is_multiple_of(4) {
            return;
        }
        if v == w {
            self.add_lin(v, 2);
        } else {
            self.cross[v].flip(w);
            self.cross[w].flip(v);
        }
    }

    /// Adds `k·ℒ` where `ℒ = c ⊕ ⨁_{t ∈ ts} y_t` read as a 0/1 integer:
    /// `ℒ ≡ c + (1 + 2c)(Σ y_t) + 2 Σ_{s<t} y_s y_t (mod 4)`.
    fn add_xor_form(&mut self, k: u8, c: u8, ts: &[usize]) {
        let k = k % 4;
        self.q0 = (self.q0 + k * c) % 4;
        for &t in ts {
            self.add_lin(t, (k * (1 + 2 * c)) % 4);
        }
        for (i, &s) in ts.iter().enumerate() {
            for &t in &ts[i + 1..] {
                self.add_cross(s, t, (2 * k) % 4);
            }
        }
    }

    /// Removes `y_w` from the form by substituting `y_w = c ⊕ ⨁_{t ∈ ts} y_t`
    /// (`w ∉ ts`).
    fn substitute(&mut self, w: usize, c: u8, ts: &[usize]) {
        let a = std::mem::take(&mut self.lin[w]);
        let partners: Vec<usize> = self.cross[w].ones().collect();
        for &u in &partners {
            self.cross[u].flip(w);
        }
        self.cross[w] = Z2Row::zero(self.lin.len());
        self.add_xor_form(a, c, ts);
        // 2·y_w·y_u only sees y_w mod 2
        for &u in &partners {
            if c == 1 {
                self.add_lin(u, 2);
            }
            for &t in ts {
                self.add_cross(t, u, 2);
            }
        }
    }

    /// Detaches `y_v`, returning its linear coefficient and cross partners.
    fn detach(&mut self, v: usize) -> (u8, Vec<usize>) {
        let a = std::mem::take(&mut self.lin[v]);
        let partners: Vec<usize> = self.cross[v].ones().collect();
        for &u in &partners {
            self.cross[u].flip(v);
        }
        self.cross[v] = Z2Row::zero(self.lin.len());
        (a, partners)
    }
}

/// Exact #CSP value when every constraint is affine. The supports combine
/// into one `ℤ₂` system; its pivot variables are substituted into the global
/// `ℤ₄` quadratic form, and the remaining sum `Σ_y i^{Q(y)}` is evaluated by
/// eliminating the lowest-index variable first.
pub fn eval_affine_csp(inst: &CspInstance) -> Result<Scalar> {
    let n = inst.num_vars;
    let mut lambda = Scalar::one();
    let mut rows: Vec<(Z2Row, u8)> = Vec::new();
    let mut q = Quadratic::new(n);
    let not_affine = |index| Error::NotInClass { index, class: "A" };
    for (ci, c) in inst.constraints.iter().enumerate() {
        let f = &c.signature;
        let k = f.arity();
        let Some(first) = f.values().iter().position(|v| !v.is_zero()) else {
            return Ok(Scalar::zero());
        };
        let lam = f.value(first);
        let supp = affine_support(f).ok_or_else(|| not_affine(ci))?;
        let exps = (0..1usize << supp.dimension())
            .map(|y| f.value(supp.point(y)).ratio_power_of_i(lam).ok_or_else(|| not_affine(ci)))
            .collect::<Result<Vec<u8>>>()?;
        lambda = &lambda * lam;
        for d in &supp.dependents {
            let mut row = Z2Row::zero(n);
            row.flip(c.vars[d.var - 1]);
            for p in 1..=k {
                if d.mask & var_bit(k, p) != 0 {
                    row.flip(c.vars[p - 1]);
                }
            }
            rows.push((row, d.rhs));
        }
        let poly = Z4Polynomial::from_values(supp.dimension(), &exps);
        for (vars, coef) in poly.terms() {
            let g: Vec<usize> = vars.iter().map(|&t| c.vars[supp.free_vars[t - 1] - 1]).collect();
            match g.as_slice() {
                [] => q.q0 = (q.q0 + coef) % 4,
                [v] => q.add_lin(*v, coef),
                [v, w] if coef % 2 == 0 => q.add_cross(*v, *w, coef),
                _ => return Err(not_affine(ci)),
            }
        }
    }

    // Reduced row echelon form of the support system.
    let mut pivots: Vec<(usize, Z2Row, u8)> = Vec::new();
    for (mut row, mut rhs) in rows {
        for (p, prow, prhs) in &pivots {
            if row.get(*p) {
                row.xor(prow);
                rhs ^= prhs;
            }
        }
        match row.first() {
            None if rhs == 1 => return Ok(Scalar::zero()),
            None => {}
            Some(p) => {
                for (_, prow, prhs) in pivots.iter_mut() {
                    if prow.get(p) {
                        prow.xor(&row);
                        *prhs ^= rhs;
                    }
                }
                pivots.push((p, row, rhs));
            }
        }
    }
    let mut alive = vec![true; n];
    for (p, row, rhs) in &pivots {
        let ts: Vec<usize> = row.ones().filter(|&t| t != *p).collect();
        q.substitute(*p, *rhs, &ts);
        alive[*p] = false;
    }

    // Gauss-sum elimination.
    let mut factor = Scalar::one();
    let two = Scalar::from_int(2);
    for v in 0..n {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        let (a, partners) = q.detach(v);
        if a % 2 == 0 {
            // Σ_y i^{y(a + 2L)} = 2·[L = a/2]
            let c = a / 2;
            match partners.first() {
                None if c == 1 => return Ok(Scalar::zero()),
                None => {}
                Some(&w) => {
                    let ts: Vec<usize> = partners[1..].to_vec();
                    q.substitute(w, c, &ts);
                    alive[w] = false;
                }
            }
            factor = &factor * &two;
        } else {
            // 1 + i^a (-1)^L = (1 + i^a) · i^{(4-a)ℒ(L)}
            factor = &factor * &(Scalar::one() + Scalar::i_pow(a as i64));
            q.add_xor_form(4 - a, 0, &partners);
        }
    }
    Ok(&(&lambda * &factor) * &Scalar::i_pow(q.q0 as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{brute_force_csp, Constraint};
    use crate::signature::{Signature, SymmetricSignature};

    fn sym(e: &[i64]) -> Signature {
        SymmetricSignature::from_ints(e).unwrap().to_signature()
    }

    #[test]
    fn examples() {
        let u = Signature::unary(Scalar::one(), Scalar::i());
        let inst = CspInstance::new(1, vec![Constraint::new(u, vec![0])]).unwrap();
        assert_eq!(eval_affine_csp(&inst).unwrap(), Scalar::one() + Scalar::i());
        let free = CspInstance::new(5, vec![]).unwrap();
        assert_eq!(eval_affine_csp(&free).unwrap(), Scalar::from_int(32));
    }

    #[test]
    fn every_gauss_branch_matches_brute_force() {
        let i = Scalar::i();
        let one = Scalar::one();
        let cases = [
            // a = 0 with a partner, a = 2 with and without partners, odd a
            vec![Constraint::new(Signature::from_ints(2, &[1, 1, 1, -1]).unwrap(), vec![0, 1])],
            vec![Constraint::new(sym(&[1, -1]), vec![0])],
            vec![
                Constraint::new(sym(&[1, -1]), vec![0]),
                Constraint::new(Signature::from_ints(2, &[1, 1, 1, -1]).unwrap(), vec![0, 1]),
            ],
            vec![
                Constraint::new(Signature::unary(one.clone(), i.clone()), vec![0]),
                Constraint::new(Signature::unary(one.clone(), -i.clone()), vec![1]),
                Constraint::new(Signature::from_ints(2, &[1, 1, 1, -1]).unwrap(), vec![0, 1]),
            ],
            vec![
                Constraint::new(sym(&[1, 0, 1, 0]), vec![0, 1, 2]),
                Constraint::new(Signature::unary(one.clone(), i.clone()), vec![2]),
                Constraint::new(Signature::from_ints(2, &[1, 1, 1, -1]).unwrap(), vec![1, 3]),
                Constraint::new(Signature::crossover(), vec![0, 3, 2, 4]),
            ],
        ];
        for (k, cs) in cases.into_iter().enumerate() {
            let inst = CspInstance::new(5, cs).unwrap();
            assert_eq!(eval_affine_csp(&inst).unwrap(), brute_force_csp(&inst).unwrap(), "case {k}");
        }
    }

    #[test]
    fn infeasible_system_is_zero() {
        let inst = CspInstance::new(
            2,
            vec![
                Constraint::new(sym(&[1, 0, 1]), vec![0, 1]),
                Constraint::new(sym(&[0, 1, 0]), vec![0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(eval_affine_csp(&inst).unwrap(), Scalar::zero());
    }

    #[test]
    fn rejects_non_affine() {
        let inst = CspInstance::new(2, vec![Constraint::new(sym(&[1, 0, 2]), vec![0, 1])]).unwrap();
        assert_eq!(eval_affine_csp(&inst), Err(Error::NotInClass { index: 0, class: "A" }));
    }
}
