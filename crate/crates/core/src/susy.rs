//! First-order mixing of primed and additional Grassmann generators, the
//! induced changes of spinor coefficients and bilinear coordinates, and the
//! resulting supertranslation of a superfield. All arithmetic is exact in
//! ε-jets.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{bilinear, conjugated_gammas, GammaRep};
use crate::error::{Error, Result};
use crate::grassmann::{add_into, derivative, mono_mul, AlgebraSignature, Monomial, State};
use crate::operator::Operator;
use crate::scalar::{Cq, EpsId, JetScalar, Rational, Ring};

/// Default bound on the total degree of a superfield.
pub const DEFAULT_MAX_DEGREE: u32 = 4;

/// How an entry of [`make_params`] fixes its ε.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsValue {
    /// An independent infinitesimal unit.
    Symbol,
    /// `r` times the infinitesimal unit of the pair.
    Scaled(Rational),
}

/// Requested value of ε_{lower}^{upper}. One index must be primed and the
/// other additional; either orientation is accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixEntry {
    pub upper: u8,
    pub lower: u8,
    pub value: EpsValue,
}

impl MixEntry {
    pub fn symbol(upper: u8, lower: u8) -> Self {
        MixEntry {
            upper,
            lower,
            value: EpsValue::Symbol,
        }
    }

    pub fn scaled(upper: u8, lower: u8, r: Rational) -> Self {
        MixEntry {
            upper,
            lower,
            value: EpsValue::Scaled(r),
        }
    }
}

/// Infinitesimal mixing parameters ε_{β''}^{α'}.
///
/// Only the orientation with a primed upper index is stored; the other one
/// is derived as ε_{α'}^{β''} = −ε_{β''}^{α'}. The unit for the pair
/// (α', β'') is [`EpsId`] `e_α'_β''`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixParams {
    sig: AlgebraSignature,
    canonical: BTreeMap<(u8, u8), JetScalar>,
    // independent ε_{α'}^{β''}, only for the unconstrained negative check
    reverse: Option<BTreeMap<(u8, u8), JetScalar>>,
}

/// Validates entries and builds constrained parameters.
pub fn make_params(sig: AlgebraSignature, entries: &[MixEntry]) -> Result<MixParams> {
    let mut canonical: BTreeMap<(u8, u8), JetScalar> = BTreeMap::new();
    let mut seen = BTreeMap::new();
    for e in entries {
        for ix in [e.upper, e.lower] {
            sig.check_index(ix as usize).map_err(|_| {
                Error::InvalidMixParams(format!("index {ix} outside 1..={}", sig.n_total()))
            })?;
        }
        let forward = sig.is_primed(e.upper) && sig.is_additional(e.lower);
        let backward = sig.is_additional(e.upper) && sig.is_primed(e.lower);
        if !forward && !backward {
            return Err(Error::InvalidMixParams(format!(
                "ε_{}^{} must pair a primed index (≤ {}) with an additional one",
                e.lower,
                e.upper,
                sig.n_d()
            )));
        }
        if seen.insert((e.upper, e.lower), ()).is_some() {
            return Err(Error::InvalidMixParams(format!(
                "duplicate entry ε_{}^{}",
                e.lower, e.upper
            )));
        }
        let (primed, additional) = if forward {
            (e.upper, e.lower)
        } else {
            (e.lower, e.upper)
        };
        let unit = EpsId::new(primed, additional);
        let value = match (&e.value, forward) {
            (EpsValue::Symbol, _) => JetScalar::eps(unit),
            (EpsValue::Scaled(r), true) => {
                JetScalar::eps_scaled(unit, Cq::new(r.clone(), Rational::from_integer(0.into())))
            }
            (EpsValue::Scaled(r), false) => {
                JetScalar::eps_scaled(unit, Cq::new(-r.clone(), Rational::from_integer(0.into())))
            }
        };
        match canonical.get(&(primed, additional)) {
            Some(prev) if *prev != value => {
                return Err(Error::InvalidMixParams(format!(
                    "ε_{additional}^{primed} and ε_{primed}^{additional} are not opposite"
                )))
            }
            Some(_) => {}
            None => {
                canonical.insert((primed, additional), value);
            }
        }
    }
    Ok(MixParams {
        sig,
        canonical,
        reverse: None,
    })
}

impl MixParams {
    pub fn sig(&self) -> AlgebraSignature {
        self.sig
    }

    /// Parameters with independent units for both orientations of every
    /// listed (primed, additional) pair, deliberately breaking
    /// ε_{α'}^{β''} = −ε_{β''}^{α'}. Exists for negative checks only.
    #[doc(hidden)]
    pub fn unconstrained_for_negative_check(
        sig: AlgebraSignature,
        pairs: &[(u8, u8)],
    ) -> Result<MixParams> {
        let mut canonical = BTreeMap::new();
        let mut reverse = BTreeMap::new();
        for &(a, b) in pairs {
            if !sig.is_primed(a) || !sig.is_additional(b) {
                return Err(Error::InvalidMixParams(format!(
                    "({a}, {b}) is not a mixing pair"
                )));
            }
            canonical.insert((a, b), JetScalar::eps(EpsId::new(a, b)));
            reverse.insert((b, a), JetScalar::eps(EpsId::new(b, a)));
        }
        Ok(MixParams {
            sig,
            canonical,
            reverse: Some(reverse),
        })
    }

    pub fn is_constrained(&self) -> bool {
        self.reverse.is_none()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    /// ε_{lower}^{upper}; zero for pairs within one sector or not set.
    pub fn eps(&self, upper: u8, lower: u8) -> JetScalar {
        if self.sig.is_primed(upper) && self.sig.is_additional(lower) {
            return self
                .canonical
                .get(&(upper, lower))
                .cloned()
                .unwrap_or_default();
        }
        if self.sig.is_additional(upper) && self.sig.is_primed(lower) {
            return match &self.reverse {
                Some(rev) => rev.get(&(upper, lower)).cloned().unwrap_or_default(),
                None => -self
                    .canonical
                    .get(&(lower, upper))
                    .cloned()
                    .unwrap_or_default(),
            };
        }
        JetScalar::zero()
    }

    /// Indices of the sector opposite to `alpha`.
    fn partners(&self, alpha: u8) -> Vec<u8> {
        if self.sig.is_primed(alpha) {
            self.sig.additional().collect()
        } else {
            self.sig.primed().collect()
        }
    }
}

/// δθ^α = Σ ε_{β}^{α} θ^{β}, with β running over the opposite sector.
pub fn delta_theta(params: &MixParams, alpha: u8) -> Result<State> {
    let sig = params.sig;
    sig.check_index(alpha as usize)?;
    let mut s = State::zero(sig);
    for b in params.partners(alpha) {
        let e = params.eps(alpha, b);
        s = s.add(&State::monomial(sig, Monomial::generator(b), e))?;
    }
    Ok(s)
}

/// θ̃^α = θ^α + δθ^α for every generator, in the original basis.
pub fn transform_generators(params: &MixParams) -> BTreeMap<u8, State> {
    let sig = params.sig;
    sig.generators()
        .map(|a| {
            let base = State::monomial(sig, Monomial::generator(a), JetScalar::one());
            let shifted = base.add(&delta_theta(params, a).unwrap()).unwrap();
            (a, shifted)
        })
        .collect()
}

/// θ̃^α as multiplication operators θ̂^α + Σ ε_β^α θ̂^β.
pub fn transform_theta_operators(params: &MixParams) -> BTreeMap<u8, Operator> {
    shifted_operators(params, |sig, a| Operator::theta(sig, a as usize).unwrap())
}

/// ∂/∂θ̃^α = ∂/∂θ^α + Σ ε_β^α ∂/∂θ^β.
pub fn transform_derivatives(params: &MixParams) -> BTreeMap<u8, Operator> {
    shifted_operators(params, |sig, a| Operator::deriv(sig, a as usize).unwrap())
}

fn shifted_operators(
    params: &MixParams,
    generator: impl Fn(AlgebraSignature, u8) -> Operator,
) -> BTreeMap<u8, Operator> {
    let sig = params.sig;
    sig.generators()
        .map(|a| {
            let mut op = generator(sig, a);
            for b in params.partners(a) {
                let e = params.eps(a, b);
                if !e.is_zero() {
                    op = &op + &generator(sig, b).scale(&e);
                }
            }
            (a, op)
        })
        .collect()
}

/// One value ∂/∂θ̃^a θ̃^b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityEntry {
    pub deriv: u8,
    pub generator: u8,
    pub value: State,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub entries: Vec<DualityEntry>,
    /// Pairs where ∂̃_a θ̃^b ≠ δ_a^b · 1.
    pub violations: Vec<(u8, u8)>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Applies every transformed derivative to every transformed generator.
pub fn check_duality(params: &MixParams) -> DualityReport {
    let sig = params.sig;
    let gens = transform_generators(params);
    let derivs = transform_derivatives(params);
    let mut report = DualityReport {
        entries: Vec::new(),
        violations: Vec::new(),
    };
    for (a, d) in &derivs {
        for (b, g) in &gens {
            let value = d.apply(g).expect("same signature");
            let expected = if a == b {
                State::one(sig)
            } else {
                State::zero(sig)
            };
            if value != expected {
                report.violations.push((*a, *b));
            }
            report.entries.push(DualityEntry {
                deriv: *a,
                generator: *b,
                value,
            });
        }
    }
    report
}

/// Transformed coefficients and their changes:
/// δξ_{α'} = −ε_{α'}^{β''} ξ_{β''}, δξ_{β''} = −ε_{β''}^{α'} ξ_{α'}.
///
/// Returns `(ξ̃, δξ)`, both of length `n_total`.
pub fn transform_coefficients<R: Ring>(xi: &[R], params: &MixParams) -> Result<(Vec<R>, Vec<R>)> {
    let sig = params.sig;
    if xi.len() != sig.n_total() as usize {
        return Err(Error::DimensionMismatch {
            expected: format!("{} coefficients", sig.n_total()),
            found: xi.len().to_string(),
        });
    }
    let mut deltas = Vec::with_capacity(xi.len());
    for a in sig.generators() {
        let mut d = R::zero();
        for b in params.partners(a) {
            let e = params.eps(b, a);
            if !e.is_zero() {
                d = d - R::from_jet(&e) * xi[b as usize - 1].clone();
            }
        }
        deltas.push(d);
    }
    let new = xi
        .iter()
        .zip(&deltas)
        .map(|(x, d)| x.clone() + d.clone())
        .collect();
    Ok((new, deltas))
}

/// Σ_α c_α θ̃^α expanded in the original basis.
pub fn expand_in_transformed_basis(coeffs: &[JetScalar], params: &MixParams) -> Result<State> {
    let sig = params.sig;
    if coeffs.len() != sig.n_total() as usize {
        return Err(Error::DimensionMismatch {
            expected: format!("{} coefficients", sig.n_total()),
            found: coeffs.len().to_string(),
        });
    }
    let gens = transform_generators(params);
    let mut s = State::zero(sig);
    for (a, g) in gens {
        s = s.add(&g.scale(&coeffs[a as usize - 1]))?;
    }
    Ok(s)
}

fn check_coord_inputs<R>(xi_prime: &[R], xi: &[R], params: &MixParams, dim: usize) -> Result<()> {
    let sig = params.sig;
    if dim != sig.n_d() as usize {
        return Err(Error::DimensionMismatch {
            expected: format!("representation of dimension n_D = {}", sig.n_d()),
            found: dim.to_string(),
        });
    }
    for len in [xi_prime.len(), xi.len()] {
        if len != sig.n_total() as usize {
            return Err(Error::DimensionMismatch {
                expected: format!("{} coefficients", sig.n_total()),
                found: len.to_string(),
            });
        }
    }
    Ok(())
}

/// δx_m = (δξ')ᵀ C H_m ξ + (ξ')ᵀ C H_m δξ over the primed components, with
/// δξ, δξ' from [`transform_coefficients`]. Inputs cover all generators.
pub fn delta_coords<R: Ring>(
    xi_prime: &[R],
    xi: &[R],
    params: &MixParams,
    rep: &GammaRep,
) -> Result<Vec<R>> {
    check_coord_inputs(xi_prime, xi, params, rep.dim())?;
    let nd = rep.dim();
    let (_, dxi) = transform_coefficients(xi, params)?;
    let (_, dxip) = transform_coefficients(xi_prime, params)?;
    Ok(conjugated_gammas(rep)?
        .iter()
        .map(|cg| bilinear(&dxip[..nd], cg, &xi[..nd]) + bilinear(&xi_prime[..nd], cg, &dxi[..nd]))
        .collect())
}

/// The three explicit formulas for δx_m with two primed generators and one
/// additional generator:
///
/// δx_1 = ε_3^1(ξ'_1ξ_3 + ξ'_3ξ_1) − ε_3^2(ξ'_2ξ_3 + ξ'_3ξ_2),
/// δx_2 = iε_3^1(ξ'_1ξ_3 + ξ'_3ξ_1) + iε_3^2(ξ'_2ξ_3 + ξ'_3ξ_2),
/// δx_3 = −ε_3^1(ξ'_2ξ_3 + ξ'_3ξ_2) − ε_3^2(ξ'_1ξ_3 + ξ'_3ξ_1).
pub fn delta_coords_closed_form<R: Ring>(
    xi_prime: &[R],
    xi: &[R],
    params: &MixParams,
) -> Result<Vec<R>> {
    let sig = params.sig;
    if (sig.n_total(), sig.n_d()) != (3, 2) {
        return Err(Error::DimensionMismatch {
            expected: "signature n = 3, n_D = 2".into(),
            found: sig.to_string(),
        });
    }
    check_coord_inputs(xi_prime, xi, params, 2)?;
    let e31 = R::from_jet(&params.eps(1, 3));
    let e32 = R::from_jet(&params.eps(2, 3));
    let i = R::from_jet(&JetScalar::i());
    let p = |a: usize, b: usize| {
        xi_prime[a - 1].clone() * xi[b - 1].clone() + xi_prime[b - 1].clone() * xi[a - 1].clone()
    };
    let s13 = p(1, 3);
    let s23 = p(2, 3);
    Ok(vec![
        e31.clone() * s13.clone() - e32.clone() * s23.clone(),
        i.clone() * e31.clone() * s13.clone() + i * e32.clone() * s23.clone(),
        -(e31 * s23) - e32 * s13,
    ])
}

/// Polynomial in even coordinates x_1…x_N with Grassmann-valued
/// coefficients: a map (x exponents, θ monomial) → jet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superfield {
    sig: AlgebraSignature,
    n_x: usize,
    terms: BTreeMap<(Vec<u32>, Monomial), JetScalar>,
}

impl Superfield {
    pub fn zero(sig: AlgebraSignature, n_x: usize) -> Self {
        Superfield {
            sig,
            n_x,
            terms: BTreeMap::new(),
        }
    }

    /// `c · x^exps · θ^mono`.
    pub fn term(sig: AlgebraSignature, exps: &[u32], mono: Monomial, c: JetScalar) -> Result<Self> {
        sig.check_monomial(mono)?;
        let mut f = Superfield::zero(sig, exps.len());
        f.add_term(exps.to_vec(), mono, c);
        Ok(f)
    }

    pub fn constant(sig: AlgebraSignature, n_x: usize, c: JetScalar) -> Self {
        let mut f = Superfield::zero(sig, n_x);
        f.add_term(vec![0; n_x], Monomial::UNIT, c);
        f
    }

    /// The coordinate x_i (1-based).
    pub fn x(sig: AlgebraSignature, n_x: usize, i: usize) -> Self {
        let mut e = vec![0; n_x];
        e[i - 1] = 1;
        let mut f = Superfield::zero(sig, n_x);
        f.add_term(e, Monomial::UNIT, JetScalar::one());
        f
    }

    /// A Grassmann state with no x dependence.
    pub fn from_state(psi: &State, n_x: usize) -> Self {
        let mut f = Superfield::zero(psi.sig(), n_x);
        for (m, c) in psi.terms() {
            f.add_term(vec![0; n_x], *m, c.clone());
        }
        f
    }

    fn add_term(&mut self, exps: Vec<u32>, mono: Monomial, c: JetScalar) {
        if c.is_zero() {
            return;
        }
        let key = (exps, mono);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn sig(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Monomial, &JetScalar)> {
        self.terms.iter().map(|((e, m), c)| (e, m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest x-degree plus Grassmann rank over all terms.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(e, m)| e.iter().sum::<u32>() + m.rank())
            .max()
            .unwrap_or(0)
    }

    fn compatible(&self, other: &Superfield) -> Result<()> {
        self.sig.ensure_same(&other.sig)?;
        if self.n_x != other.n_x {
            return Err(Error::DimensionMismatch {
                expected: format!("{} even coordinates", self.n_x),
                found: other.n_x.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Superfield) -> Result<Superfield> {
        self.compatible(other)?;
        let mut out = self.clone();
        for ((e, m), c) in &other.terms {
            out.add_term(e.clone(), *m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &JetScalar) -> Superfield {
        let mut out = Superfield::zero(self.sig, self.n_x);
        for ((e, m), v) in &self.terms {
            out.add_term(e.clone(), *m, c * v);
        }
        out
    }

    /// Product with commuting x and anticommuting θ.
    pub fn mul(&self, other: &Superfield) -> Result<Superfield> {
        self.compatible(other)?;
        let mut out = Superfield::zero(self.sig, self.n_x);
        for ((ea, ma), ca) in &self.terms {
            for ((eb, mb), cb) in &other.terms {
                if let Some((sign, m)) = mono_mul(*ma, *mb) {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                    let c = ca * cb;
                    out.add_term(e, m, if sign > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// ∂f/∂x_i.
    pub fn derivative_x(&self, i: usize) -> Superfield {
        let mut out = Superfield::zero(self.sig, self.n_x);
        for ((e, m), c) in &self.terms {
            let k = e[i - 1];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i - 1] -= 1;
            out.add_term(e2, *m, c * &JetScalar::from_int(k as i64));
        }
        out
    }

    /// Left derivative ∂f/∂θ^α.
    pub fn derivative_theta(&self, alpha: u8) -> Result<Superfield> {
        self.sig.check_index(alpha as usize)?;
        let mut out = Superfield::zero(self.sig, self.n_x);
        for ((e, m), c) in &self.terms {
            let d = derivative(alpha as usize, &State::monomial(self.sig, *m, c.clone()))?;
            for (m2, c2) in d.terms() {
                out.add_term(e.clone(), *m2, c2.clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Superfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((e, m), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{p}", i + 1)?,
                }
            }
            if !m.is_unit() {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

/// Both evaluations of f(x + δx, θ + δθ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupertranslationReport {
    pub delta_x: Vec<JetScalar>,
    pub delta_theta: BTreeMap<u8, State>,
    /// Direct substitution.
    pub direct: Superfield,
    /// f + Σ δx_i ∂f/∂x_i + Σ δθ^α ∂f/∂θ^α (δθ multiplied from the left,
    /// matching the left derivative).
    pub taylor: Superfield,
}

impl SupertranslationReport {
    pub fn consistent(&self) -> bool {
        self.direct == self.taylor
    }
}

/// Supertranslates a superfield whose Grassmann part lives on the primed
/// generators. The shifts δx come from [`delta_coords`] for the given
/// spinors and δθ from [`delta_theta`].
pub fn supertranslate_superfield(
    f: &Superfield,
    xi_prime: &[JetScalar],
    xi: &[JetScalar],
    params: &MixParams,
    rep: &GammaRep,
    max_degree: u32,
) -> Result<(Superfield, SupertranslationReport)> {
    let sig = params.sig;
    sig.ensure_same(&f.sig)?;
    if f.n_x != rep.gammas().len() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} even coordinates", rep.gammas().len()),
            found: f.n_x.to_string(),
        });
    }
    let degree = f.degree();
    if degree > max_degree {
        return Err(Error::DegreeExceeded {
            degree,
            max: max_degree,
        });
    }
    for (_, m) in f.terms.keys() {
        if let Some(a) = m.indices().find(|a| !sig.is_primed(*a)) {
            return Err(Error::NonPrimedGenerator(a));
        }
    }
    let delta_x = delta_coords(xi_prime, xi, params, rep)?;
    let delta_theta: BTreeMap<u8, State> = sig
        .primed()
        .map(|a| (a, delta_theta(params, a).unwrap()))
        .collect();
    let n_x = f.n_x;

    let shifted_x: Vec<Superfield> = (1..=n_x)
        .map(|i| {
            Superfield::x(sig, n_x, i)
                .add(&Superfield::constant(sig, n_x, delta_x[i - 1].clone()))
                .unwrap()
        })
        .collect();
    let mut direct = Superfield::zero(sig, n_x);
    for ((e, m), c) in &f.terms {
        let mut t = Superfield::constant(sig, n_x, c.clone());
        for (i, p) in e.iter().enumerate() {
            for _ in 0..*p {
                t = t.mul(&shifted_x[i])?;
            }
        }
        for a in m.indices() {
            let mut shifted = State::monomial(sig, Monomial::generator(a), JetScalar::one());
            shifted = shifted.add(&delta_theta[&a])?;
            t = t.mul(&Superfield::from_state(&shifted, n_x))?;
        }
        direct = direct.add(&t)?;
    }

    let mut taylor = f.clone();
    for i in 1..=n_x {
        taylor = taylor.add(&f.derivative_x(i).scale(&delta_x[i - 1]))?;
    }
    for (a, dt) in &delta_theta {
        let term = Superfield::from_state(dt, n_x).mul(&f.derivative_theta(*a)?)?;
        taylor = taylor.add(&term)?;
    }

    let report = SupertranslationReport {
        delta_x,
        delta_theta,
        direct: direct.clone(),
        taylor,
    };
    Ok((direct, report))
}

/// Σ_α c_α θ^α as a plain state.
pub fn linear_state(sig: AlgebraSignature, coeffs: &[JetScalar]) -> State {
    let mut v = BTreeMap::new();
    for (i, c) in coeffs.iter().enumerate() {
        add_into(&mut v, Monomial::generator(i as u8 + 1), c.clone());
    }
    State::from_terms(sig, v).expect("indices in range")
}
