use super::csp::CspInstance;
use crate::classes::primitive_decomposition;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signature::var_bit;

/// Union-find over variables with the parity of each variable relative to
/// its parent.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    /// Root of `x` and the parity `x ⊕ root`.
    fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // compress, accumulating parities from the top down
        let mut acc = 0u8;
        for &v in path.iter().rev() {
            acc ^= self.parity[v];
            self.parity[v] = acc;
            self.parent[v] = r;
        }
        (r, if path.is_empty() { 0 } else { self.parity[x] })
    }

    /// Records `x ⊕ y = p`; returns false on a contradiction.
    fn relate(&mut self, x: usize, y: usize, p: u8) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == p;
        }
        self.parent[ry] = rx;
        self.parity[ry] = px ^ py ^ p;
        true
    }
}

/// Exact #CSP value when every constraint is product-type: each constraint
/// splits into unary weights and parity relations `x ⊕ y = c`, and every
/// connected class of variables contributes the sum over its two states.
pub fn eval_product_csp(inst: &CspInstance) -> Result<Scalar> {
    let n = inst.num_vars;
    let mut total = Scalar::one();
    let mut weights: Vec<[Scalar; 2]> = vec![[Scalar::one(), Scalar::one()]; n];
    let mut uf = ParityUnionFind::new(n);
    let mut consistent = true;
    for (ci, c) in inst.constraints.iter().enumerate() {
        let f = &c.signature;
        if f.is_zero() {
            return Ok(Scalar::zero());
        }
        if crate::classes::product_witness(f).is_some() {
            return Err(Error::NotInClass { index: ci, class: "P" });
        }
        let d = primitive_decomposition(f)?;
        total = &total * &d.constant;
        for (block, g) in d.blocks.iter().zip(&d.factors) {
            let vars: Vec<usize> = block.iter().map(|&p| c.vars[p - 1]).collect();
            let k = g.arity();
            if k == 1 {
                let w = &mut weights[vars[0]];
                w[0] = &w[0] * g.value(0);
                w[1] = &w[1] * g.value(1);
                continue;
            }
            let supp = g.support();
            let beta = supp[0];
            let bit = |x: usize, t: usize| ((x & var_bit(k, t + 1)) != 0) as u8;
            if supp.len() == 1 {
                // a single point pins every variable
                for (t, &v) in vars.iter().enumerate() {
                    let b = bit(beta, t) as usize;
                    weights[v][1 - b] = Scalar::zero();
                }
                let w = &mut weights[vars[0]];
                let b0 = bit(beta, 0) as usize;
                w[b0] = &w[b0] * g.value(beta);
                continue;
            }
            // support {β, β̄}: x_t ⊕ x_0 = β_t ⊕ β_0, weight read off x_0
            for t in 1..k {
                consistent &= uf.relate(vars[0], vars[t], bit(beta, t) ^ bit(beta, 0));
            }
            let b0 = bit(beta, 0) as usize;
            let w = &mut weights[vars[0]];
            w[b0] = &w[b0] * g.value(beta);
            w[1 - b0] = &w[1 - b0] * g.value(supp[1]);
        }
    }
    if !consistent {
        return Ok(Scalar::zero());
    }
    let mut members: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for v in 0..n {
        let (r, p) = uf.find(v);
        members[r].push((v, p));
    }
    for comp in members.iter().filter(|m| !m.is_empty()) {
        let mut sum = Scalar::zero();
        for s in 0..2u8 {
            let mut prod = Scalar::one();
            for &(v, p) in comp {
                prod = &prod * &weights[v][(s ^ p) as usize];
                if prod.is_zero() {
                    break;
                }
            }
            sum += &prod;
        }
        total = &total * &sum;
        if total.is_zero() {
            break;
        }
    }
    Ok(total)
}
