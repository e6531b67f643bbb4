//! Standardization `φ: R → S` of a positive grading and the
//! Cartwright–Sturmfels check.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gin::{gin_trials, GinOptions};
use crate::groebner::Ideal;
use crate::hilbert::{k_polynomial, k_polynomial_monomial, multidegree_c_from_k};
use crate::monomial::MonomialIdeal;
use crate::order::{lift_order_phi, MonomialOrder, TieBreak};
use crate::ring::{GradedRing, Monomial, Polynomial};

/// `x_i ↦ y_(i,1) ⋯ y_(i,ℓ_i)` with `ℓ_i = |deg x_i|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardizationMap {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<Vec<usize>>,
}

/// The target ring lists the degree-`e_1` variables first, then those of
/// degree `e_2`, and so on; `y{i}_{j}` is the `j`-th factor of `x_i`.
/// Variables of standard degree keep their names.
pub fn standardize(ring: &Arc<GradedRing>) -> Result<StandardizationMap> {
    let p = ring.rank();
    let n = ring.nvars();
    // factor j of x_i and its block
    let mut factors: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut f = Vec::new();
        for (k, &d) in ring.degree(i).iter().enumerate() {
            f.extend(std::iter::repeat(k).take(d as usize));
        }
        factors.push(f);
    }
    let build = |keep_names: bool| {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut images: Vec<Vec<usize>> = factors.iter().map(|f| vec![0; f.len()]).collect();
        for k in 0..p {
            for (i, f) in factors.iter().enumerate() {
                for (j, &blk) in f.iter().enumerate() {
                    if blk != k {
                        continue;
                    }
                    images[i][j] = names.len();
                    if keep_names && f.len() == 1 {
                        names.push(ring.var_name(i).to_string());
                    } else {
                        names.push(format!("y{}_{}", i + 1, j + 1));
                    }
                    let mut d = vec![0; p];
                    d[k] = 1;
                    degrees.push(d);
                }
            }
        }
        GradedRing::new(names, degrees, p, ring.field()).map(|t| (Arc::new(t), images))
    };
    // variables that are already standard keep their names unless that collides
    let (target, images) = match build(true) {
        Err(Error::DuplicateVariableName(_)) => build(false)?,
        other => other?,
    };
    Ok(StandardizationMap {
        source: ring.clone(),
        target,
        images,
    })
}

impl StandardizationMap {
    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    /// `images()[i]` lists the target variables `y_(i,1..ℓ_i)`.
    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|v| v.len() == 1)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Monomial {
        let mut e = vec![0; self.target.nvars()];
        for (i, &a) in m.exponents().iter().enumerate() {
            for &y in &self.images[i] {
                e[y] += a;
            }
        }
        Monomial::new(e)
    }

    pub fn apply<F: Field>(&self, f: &Polynomial<F>) -> Polynomial<F> {
        f.map_monomials(self.target.clone(), |m| Ok(self.apply_monomial(m)))
            .expect("standardization keeps exponents")
    }

    pub fn apply_monomial_ideal(&self, ideal: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(
            self.target.clone(),
            ideal.gens().iter().map(|m| self.apply_monomial(m)).collect(),
        )
    }

    pub fn lift_order(&self, order: &MonomialOrder) -> MonomialOrder {
        lift_order_phi(order, self)
    }
}

/// The standardization `J = φ(I) S`.
pub fn standardize_ideal<F: Field>(ideal: &Ideal<F>, map: &StandardizationMap) -> Result<Ideal<F>> {
    let gens = ideal.gens().iter().map(|g| map.apply(g)).collect();
    Ideal::new(map.target.clone(), ideal.field().clone(), gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardizationReport {
    pub codim_source: Option<usize>,
    pub codim_target: Option<usize>,
    pub codim_equal: bool,
    pub k_equal: bool,
    pub c_equal: bool,
    pub initial_compatible: bool,
    pub pass: bool,
}

/// Checks `codim`, `K`, `𝒞` and `in_{>'}(J) = φ(in_>(I)) S`.
pub fn verify_standardization<F: Field>(
    ideal: &Ideal<F>,
    map: &StandardizationMap,
    order: &MonomialOrder,
) -> Result<StandardizationReport> {
    let j = standardize_ideal(ideal, map)?;
    let lifted = map.lift_order(order);
    let in_i = ideal.initial_ideal(order);
    let in_j = j.initial_ideal(&lifted);
    let codim_source = in_i.codim();
    let codim_target = in_j.codim();
    let ki = k_polynomial_monomial(&in_i);
    let kj = k_polynomial_monomial(&in_j);
    let c_equal = match (codim_source, codim_target) {
        (Some(a), Some(b)) => multidegree_c_from_k(&ki, a)? == multidegree_c_from_k(&kj, b)?,
        (None, None) => true,
        _ => false,
    };
    let initial_compatible = map.apply_monomial_ideal(&in_i) == in_j;
    let codim_equal = codim_source == codim_target;
    let k_equal = ki == kj;
    Ok(StandardizationReport {
        codim_source,
        codim_target,
        codim_equal,
        k_equal,
        c_equal,
        initial_compatible,
        pass: codim_equal && k_equal && c_equal && initial_compatible,
    })
}

#[derive(Clone, Debug)]
pub struct CsOptions {
    pub gin: GinOptions,
    /// Order on the standardized ring; grevlex when `None`.
    pub order: Option<MonomialOrder>,
    /// Random weight orders on `R` used to confirm that `in_>(I)` is
    /// squarefree after a positive verdict.
    pub sample_orders: usize,
}

impl Default for CsOptions {
    fn default() -> Self {
        CsOptions {
            gin: GinOptions::default(),
            order: None,
            sample_orders: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CsVerdict {
    pub is_cs: bool,
    /// `gin(J)`, radical and Borel-fixed, when `is_cs`.
    pub witness: Option<MonomialIdeal>,
    pub reason: Option<String>,
    /// Whether every sampled order gave a squarefree initial ideal.
    pub squarefree_initials: Option<bool>,
}

/// Decides whether `I` is Cartwright–Sturmfels.
///
/// A radical Borel-fixed ideal has no minimal generator of degree beyond
/// `(1, ..., 1)`, so only that part of `gin(J)` is computed; the verdict is
/// positive exactly when this part already has the K-polynomial of `I`, in
/// which case it is all of `gin(J)`.
pub fn cs_check<F: Field>(ideal: &Ideal<F>, opts: &CsOptions) -> Result<CsVerdict> {
    let map = standardize(ideal.ring())?;
    let j = standardize_ideal(ideal, &map)?;
    let s = map.target();
    let order = opts
        .order
        .clone()
        .unwrap_or_else(|| MonomialOrder::grevlex(s.nvars()));
    let mut gopts = opts.gin.clone();
    gopts.bound = Some(vec![1; s.rank()]);
    let g = gin_trials(&j, &order, &gopts)?;
    if !g.stable {
        return Err(crate::error::Error::Unstable);
    }
    let k_i = k_polynomial(ideal, &ideal.default_order());
    let k_g = k_polynomial_monomial(&g.ideal);
    if k_g != k_i {
        return Ok(CsVerdict {
            is_cs: false,
            witness: None,
            reason: Some("gin of the standardization has generators beyond degree (1,...,1), so it is not radical".into()),
            squarefree_initials: None,
        });
    }
    let squarefree_initials = if opts.sample_orders > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.gin.seed ^ 0x5eed);
        let n = ideal.ring().nvars();
        let mut ok = true;
        for _ in 0..opts.sample_orders {
            let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=20)).collect();
            let o = MonomialOrder::with_rows(n, vec![w], TieBreak::GrevLex)?;
            ok &= ideal.initial_ideal(&o).is_squarefree();
        }
        Some(ok)
    } else {
        None
    };
    Ok(CsVerdict {
        is_cs: true,
        witness: Some(g.ideal),
        reason: None,
        squarefree_initials,
    })
}
