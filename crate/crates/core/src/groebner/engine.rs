//! Buchberger's algorithm on flat term arrays.

use std::cmp::Ordering;

use crate::field::Field;
use crate::order::MonomialOrder;

/// Terms sorted strictly descending; exponents stored row after row.
#[derive(Clone, Debug)]
pub(crate) struct Poly<E> {
    pub exps: Vec<u32>,
    pub coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn empty() -> Self {
        Poly {
            exps: Vec::new(),
            coeffs: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn exp(&self, i: usize, n: usize) -> &[u32] {
        &self.exps[i * n..(i + 1) * n]
    }

    pub fn terms(&self, n: usize) -> impl Iterator<Item = (&[u32], &E)> + '_ {
        (0..self.len()).map(move |i| (self.exp(i, n), &self.coeffs[i]))
    }
}

fn mask_of(e: &[u32]) -> u64 {
    let mut m = 0u64;
    for (i, &a) in e.iter().enumerate() {
        if a > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) struct Element<E> {
    pub poly: Poly<E>,
    pub lead: Vec<u32>,
    pub mask: u64,
    pub sugar: u64,
}

struct Pair {
    i: usize,
    j: Option<usize>,
    lcm: Vec<u32>,
    sugar: u64,
}

pub(crate) struct Engine<'a, F: Field> {
    pub field: &'a F,
    pub order: &'a MonomialOrder,
    pub n: usize,
    /// Positive per-variable weights driving the sugar strategy.
    pub weights: Vec<u32>,
    /// Variable degrees and a multidegree bound; pairs and inputs outside the
    /// downset of the bound are dropped.
    pub bound: Option<(Vec<Vec<u32>>, Vec<u32>)>,
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(field: &'a F, order: &'a MonomialOrder, weights: Vec<u32>) -> Self {
        let n = weights.len();
        Engine {
            field,
            order,
            n,
            weights,
            bound: None,
        }
    }

    fn wdeg(&self, e: &[u32]) -> u64 {
        e.iter()
            .zip(&self.weights)
            .map(|(&a, &w)| a as u64 * w as u64)
            .sum()
    }

    fn within_bound(&self, e: &[u32]) -> bool {
        match &self.bound {
            None => true,
            Some((degrees, bound)) => {
                let mut d = vec![0u64; bound.len()];
                for (i, &a) in e.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (k, &dk) in degrees[i].iter().enumerate() {
                        d[k] += a as u64 * dk as u64;
                    }
                }
                d.iter().zip(bound).all(|(x, &b)| *x <= b as u64)
            }
        }
    }

    /// Sorts descending and combines like terms.
    pub fn from_terms(&self, mut terms: Vec<(Vec<u32>, F::Elem)>) -> Poly<F::Elem> {
        terms.sort_by(|a, b| self.order.compare_exps(&b.0, &a.0));
        let mut out = Poly::empty();
        let mut last: Option<Vec<u32>> = None;
        for (e, c) in terms {
            if last.as_ref() == Some(&e) {
                let k = out.coeffs.len() - 1;
                out.coeffs[k] = self.field.add(&out.coeffs[k], &c);
            } else {
                if let Some(k) = out.coeffs.len().checked_sub(1) {
                    if self.field.is_zero(&out.coeffs[k]) {
                        out.coeffs.pop();
                        out.exps.truncate(k * self.n);
                    }
                }
                out.exps.extend_from_slice(&e);
                out.coeffs.push(c);
                last = Some(e);
            }
        }
        if let Some(k) = out.coeffs.len().checked_sub(1) {
            if self.field.is_zero(&out.coeffs[k]) {
                out.coeffs.pop();
                out.exps.truncate(k * self.n);
            }
        }
        out
    }

    /// `f[fi..] - c * x^m * g[gi..]`.
    fn sub_mul(
        &self,
        f: &Poly<F::Elem>,
        fi: usize,
        c: &F::Elem,
        m: &[u32],
        g: &Poly<F::Elem>,
        gi: usize,
    ) -> Poly<F::Elem> {
        let n = self.n;
        let field = self.field;
        let cap = (f.len() - fi) + (g.len() - gi);
        let mut out = Poly {
            exps: Vec::with_capacity(cap * n),
            coeffs: Vec::with_capacity(cap),
        };
        let mut buf = vec![0u32; n];
        let shift = |buf: &mut Vec<u32>, j: usize| {
            for (k, (&a, &b)) in g.exp(j, n).iter().zip(m).enumerate() {
                buf[k] = a.checked_add(b).expect("exponent overflow");
            }
        };
        let (mut i, mut j) = (fi, gi);
        if j < g.len() {
            shift(&mut buf, j);
        }
        while i < f.len() && j < g.len() {
            match self.order.compare_exps(f.exp(i, n), &buf) {
                Ordering::Greater => {
                    out.exps.extend_from_slice(f.exp(i, n));
                    out.coeffs.push(f.coeffs[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.exps.extend_from_slice(&buf);
                    out.coeffs.push(field.neg(&field.mul(c, &g.coeffs[j])));
                    j += 1;
                    if j < g.len() {
                        shift(&mut buf, j);
                    }
                }
                Ordering::Equal => {
                    let v = field.sub(&f.coeffs[i], &field.mul(c, &g.coeffs[j]));
                    if !field.is_zero(&v) {
                        out.exps.extend_from_slice(&buf);
                        out.coeffs.push(v);
                    }
                    i += 1;
                    j += 1;
                    if j < g.len() {
                        shift(&mut buf, j);
                    }
                }
            }
        }
        while i < f.len() {
            out.exps.extend_from_slice(f.exp(i, n));
            out.coeffs.push(f.coeffs[i].clone());
            i += 1;
        }
        while j < g.len() {
            out.exps.extend_from_slice(&buf);
            out.coeffs.push(field.neg(&field.mul(c, &g.coeffs[j])));
            j += 1;
            if j < g.len() {
                shift(&mut buf, j);
            }
        }
        out
    }

    fn find_divisor(&self, e: &[u32], basis: &[&Element<F::Elem>], skip: Option<usize>) -> Option<usize> {
        let mask = mask_of(e);
        basis.iter().enumerate().position(|(k, g)| {
            Some(k) != skip && g.mask & !mask == 0 && divides(&g.lead, e)
        })
    }

    /// Normal form; when `keep_lead` the leading term is left untouched.
    pub fn reduce(
        &self,
        f: Poly<F::Elem>,
        basis: &[&Element<F::Elem>],
        keep_lead: bool,
        skip: Option<usize>,
    ) -> Poly<F::Elem> {
        let n = self.n;
        let mut rem = Poly::empty();
        let mut h = f;
        let mut start = 0;
        if keep_lead && !h.is_empty() {
            rem.exps.extend_from_slice(h.exp(0, n));
            rem.coeffs.push(h.coeffs[0].clone());
            start = 1;
        }
        let mut m = vec![0u32; n];
        while start < h.len() {
            let e = h.exp(start, n);
            match self.find_divisor(e, basis, skip) {
                Some(k) => {
                    let g = basis[k];
                    for t in 0..n {
                        m[t] = e[t] - g.lead[t];
                    }
                    let c = self.field.div(&h.coeffs[start], &g.poly.coeffs[0]);
                    h = self.sub_mul(&h, start + 1, &c, &m, &g.poly, 1);
                    start = 0;
                }
                None => {
                    rem.exps.extend_from_slice(e);
                    rem.coeffs.push(h.coeffs[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }

    pub fn make_monic(&self, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
        if let Some(c) = p.coeffs.first() {
            if !self.field.is_one(c) {
                let inv = self.field.inv(c);
                for v in p.coeffs.iter_mut() {
                    *v = self.field.mul(v, &inv);
                }
            }
        }
        p
    }

    fn element(&self, poly: Poly<F::Elem>, sugar: u64) -> Element<F::Elem> {
        let lead = poly.exp(0, self.n).to_vec();
        Element {
            mask: mask_of(&lead),
            lead,
            poly,
            sugar,
        }
    }

    fn spoly(&self, a: &Element<F::Elem>, b: &Element<F::Elem>, lcm: &[u32]) -> Poly<F::Elem> {
        let ma: Vec<u32> = lcm.iter().zip(&a.lead).map(|(l, x)| l - x).collect();
        let mb: Vec<u32> = lcm.iter().zip(&b.lead).map(|(l, x)| l - x).collect();
        let one = self.field.one();
        let zero = Poly::empty();
        let shifted = self.sub_mul(&zero, 0, &self.field.neg(&one), &ma, &a.poly, 1);
        self.sub_mul(&shifted, 0, &one, &mb, &b.poly, 1)
    }

    fn pair_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
    }

    fn coprime(a: &[u32], b: &[u32]) -> bool {
        a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
    }

    /// Gebauer–Möller update after inserting element `h`.
    fn update(
        &self,
        store: &[Element<F::Elem>],
        active: &mut Vec<usize>,
        pairs: &mut Vec<Pair>,
        h: usize,
    ) {
        let lh = &store[h].lead;
        let cands: Vec<(usize, Vec<u32>)> = active
            .iter()
            .map(|&g| (g, Self::pair_lcm(lh, &store[g].lead)))
            .collect();
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if Self::coprime(lh, &store[cands[a].0].lead) {
                continue;
            }
            let la = &cands[a].1;
            let killed = cands.iter().enumerate().any(|(b, (_, lb))| {
                b != a && keep[b] && divides(lb, la) && (lb != la || b > a)
            });
            if killed {
                keep[a] = false;
            }
        }
        pairs.retain(|p| {
            let Some(j) = p.j else { return true };
            if !divides(lh, &p.lcm) {
                return true;
            }
            let l1 = Self::pair_lcm(&store[p.i].lead, lh);
            let l2 = Self::pair_lcm(lh, &store[j].lead);
            l1 == p.lcm || l2 == p.lcm
        });
        for (k, (g, lcm)) in cands.into_iter().enumerate() {
            if !keep[k] || Self::coprime(lh, &store[g].lead) {
                continue;
            }
            if !self.within_bound(&lcm) {
                continue;
            }
            let wl = self.wdeg(&lcm);
            let sugar = (store[h].sugar + wl - self.wdeg(lh)).max(store[g].sugar + wl - self.wdeg(&store[g].lead));
            pairs.push(Pair {
                i: g,
                j: Some(h),
                lcm,
                sugar,
            });
        }
        active.retain(|&g| !divides(lh, &store[g].lead));
        active.push(h);
    }

    /// Reduced Gröbner basis (monic, ascending by leading monomial).
    pub fn groebner(&self, input: Vec<Poly<F::Elem>>) -> Vec<Poly<F::Elem>> {
        let input: Vec<Poly<F::Elem>> = input.into_iter().filter(|p| !p.is_empty()).collect();
        let mut store: Vec<Element<F::Elem>> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut inputs: Vec<Option<Poly<F::Elem>>> = Vec::with_capacity(input.len());
        for p in input {
            let lead = p.exp(0, self.n).to_vec();
            if !self.within_bound(&lead) {
                continue;
            }
            let sugar = p.terms(self.n).map(|(e, _)| self.wdeg(e)).max().unwrap_or(0);
            pairs.push(Pair {
                i: inputs.len(),
                j: None,
                lcm: lead,
                sugar,
            });
            inputs.push(Some(p));
        }
        while !pairs.is_empty() {
            let d = pairs.iter().map(|p| p.sugar).min().unwrap();
            let (mut batch, rest): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.sugar == d);
            pairs = rest;
            batch.sort_by(|a, b| {
                self.order
                    .compare_exps(&a.lcm, &b.lcm)
                    .then_with(|| a.j.is_some().cmp(&b.j.is_some()))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            });
            for pair in batch {
                let s = match pair.j {
                    None => inputs[pair.i].take().expect("input used once"),
                    Some(j) => {
                        let (a, b) = (&store[pair.i], &store[j]);
                        self.spoly(a, b, &pair.lcm)
                    }
                };
                let basis: Vec<&Element<F::Elem>> = active.iter().map(|&k| &store[k]).collect();
                let r = self.reduce(s, &basis, false, None);
                if r.is_empty() {
                    continue;
                }
                let r = self.make_monic(r);
                let lead = r.exp(0, self.n);
                let sugar = pair.sugar.max(self.wdeg(lead));
                store.push(self.element(r, sugar));
                let h = store.len() - 1;
                self.update(&store, &mut active, &mut pairs, h);
            }
        }
        self.interreduce(store, active)
    }

    fn interreduce(&self, store: Vec<Element<F::Elem>>, active: Vec<usize>) -> Vec<Poly<F::Elem>> {
        let mut store: Vec<Option<Element<F::Elem>>> = store.into_iter().map(Some).collect();
        let mut elems: Vec<Element<F::Elem>> = active.iter().map(|&k| store[k].take().unwrap()).collect();
        elems.sort_by(|a, b| self.order.compare_exps(&a.lead, &b.lead));
        // Ascending leads: an element's tail only involves smaller monomials,
        // so reducing by the already reduced prefix is enough.
        let mut done: Vec<Element<F::Elem>> = Vec::with_capacity(elems.len());
        for e in elems {
            let basis: Vec<&Element<F::Elem>> = done.iter().collect();
            let reduced = self.reduce(e.poly, &basis, true, None);
            let sugar = e.sugar;
            done.push(self.element(reduced, sugar));
        }
        done.into_iter().map(|e| e.poly).collect()
    }

    /// Quotient of an exact division, or `None` if `d` does not divide `f`.
    pub fn divide_exact(&self, f: &Poly<F::Elem>, d: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let n = self.n;
        if d.is_empty() {
            return None;
        }
        let dl = d.exp(0, n).to_vec();
        let mut h = f.clone();
        let mut q: Vec<(Vec<u32>, F::Elem)> = Vec::new();
        let mut m = vec![0u32; n];
        while !h.is_empty() {
            let e = h.exp(0, n);
            if !divides(&dl, e) {
                return None;
            }
            for t in 0..n {
                m[t] = e[t] - dl[t];
            }
            let c = self.field.div(&h.coeffs[0], &d.coeffs[0]);
            q.push((m.clone(), c.clone()));
            h = self.sub_mul(&h, 1, &c, &m, d, 1);
        }
        Some(self.from_terms(q))
    }
}
