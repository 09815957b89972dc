//! Super Minkowski space `ℝ^{2,1|2}`, its `OSp(1|2)` action and the normal
//! forms of points, pairs and triples on the special light cone.
//!
//! A vector `(x1, x2, y, φ, θ)` is identified with the symmetric supermatrix
//! `(x1 y φ / y x2 θ / −φ −θ 0)` and the group acts by `A ↦ g^{st} A g`.
//! This is a right action: `act(g, act(h, A)) = act(h·g, A)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::grassmann::Grassmann;
use crate::superlinalg::{OspElement, SuperMatrix};

const SQRT2: f64 = core::f64::consts::SQRT_2;

#[derive(Clone, Debug, PartialEq)]
pub struct SuperVector {
    pub x1: Grassmann,
    pub x2: Grassmann,
    pub y: Grassmann,
    pub phi: Grassmann,
    pub theta: Grassmann,
}

impl SuperVector {
    pub fn new(x1: Grassmann, x2: Grassmann, y: Grassmann, phi: Grassmann, theta: Grassmann) -> Result<Self, Error> {
        let r = x1.rank();
        for g in [&x2, &y, &phi, &theta] {
            if g.rank() != r {
                return Err(Error::RankMismatch { left: r, right: g.rank() });
            }
        }
        if !(x1.is_even() && x2.is_even() && y.is_even()) {
            return Err(Error::WrongParity("vector even coordinate"));
        }
        if !(phi.is_odd() && theta.is_odd()) {
            return Err(Error::WrongParity("vector odd coordinate"));
        }
        Ok(SuperVector { x1, x2, y, phi, theta })
    }

    pub fn from_reals(rank: u8, x1: f64, x2: f64, y: f64) -> Self {
        let s = |x| Grassmann::scalar(rank, x);
        SuperVector { x1: s(x1), x2: s(x2), y: s(y), phi: s(0.0), theta: s(0.0) }
    }

    /// `(1,0,0,0,0)`.
    pub fn e1(rank: u8) -> Self {
        Self::from_reals(rank, 1.0, 0.0, 0.0)
    }

    /// `(0,1,0,0,0)`.
    pub fn e2(rank: u8) -> Self {
        Self::from_reals(rank, 0.0, 1.0, 0.0)
    }

    /// `e_θ = (1,0,0,0,θ)`.
    pub fn e_theta(theta: &Grassmann) -> Self {
        let mut v = Self::e1(theta.rank());
        v.theta = theta.clone();
        v
    }

    /// `t(1,1,1,φ,ψ)`, the shape of the middle point of a standard triple when `ψ = φ`.
    pub fn diagonal_point(t: &Grassmann, phi: &Grassmann, psi: &Grassmann) -> Self {
        SuperVector { x1: t.clone(), x2: t.clone(), y: t.clone(), phi: t * phi, theta: t * psi }
    }

    pub fn rank(&self) -> u8 {
        self.x1.rank()
    }

    pub fn coords(&self) -> [&Grassmann; 5] {
        [&self.x1, &self.x2, &self.y, &self.phi, &self.theta]
    }

    /// Multiplies every coordinate by the even element `k`.
    pub fn scale(&self, k: &Grassmann) -> Self {
        SuperVector { x1: k * &self.x1, x2: k * &self.x2, y: k * &self.y, phi: k * &self.phi, theta: k * &self.theta }
    }

    pub fn neg_odd(&self) -> Self {
        SuperVector { phi: -&self.phi, theta: -&self.theta, ..self.clone() }
    }

    pub fn bodies(&self) -> [f64; 3] {
        [self.x1.body(), self.x2.body(), self.y.body()]
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.coords().iter().zip(other.coords()).map(|(a, b)| a.max_diff(b)).fold(0.0, f64::max)
    }

    fn body_scale(&self) -> f64 {
        self.bodies().iter().fold(1.0f64, |m, x| m.max(x.abs()))
    }

    pub fn to_matrix(&self) -> SuperMatrix {
        let z = Grassmann::zero(self.rank());
        SuperMatrix {
            m: [
                [self.x1.clone(), self.y.clone(), self.phi.clone()],
                [self.y.clone(), self.x2.clone(), self.theta.clone()],
                [-&self.phi, -&self.theta, z],
            ],
        }
    }

    /// Residual of `⟨A,A⟩ = 0`, relative to the squared coordinate scale.
    pub fn light_cone_residual(&self) -> f64 {
        let s = self.body_scale();
        pairing(self, self).max_abs() / (s * s)
    }

    /// `(x1, x2, y, φ, θ)` with each entry in Grassmann text form.
    pub fn parse(rank: u8, text: &str) -> Result<Self, Error> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or(Error::Parse("vector must be parenthesized"))?;
        let mut parts: Vec<&str> = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for (i, ch) in inner.char_indices() {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&inner[start..]);
        if parts.len() != 5 {
            return Err(Error::Parse("vector needs five comma-separated entries"));
        }
        let mut g = Vec::with_capacity(5);
        for p in parts {
            g.push(Grassmann::parse(rank, p.trim())?);
        }
        let mut it = g.into_iter();
        let mut next = || it.next().unwrap();
        SuperVector::new(next(), next(), next(), next(), next())
    }
}

impl fmt::Display for SuperVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.x1, self.x2, self.y, self.phi, self.theta)
    }
}

/// `⟨A,A′⟩ = ½(x1x2′ + x1′x2) − yy′ + φθ′ + φ′θ`.
pub fn pairing(a: &SuperVector, b: &SuperVector) -> Grassmann {
    let mut p = (&(&a.x1 * &b.x2) + &(&b.x1 * &a.x2)).scale(0.5);
    p -= &(&a.y * &b.y);
    p += &(&a.phi * &b.theta);
    p += &(&b.phi * &a.theta);
    p
}

/// `√⟨A,B⟩`, positive-body branch.
pub fn lambda_length(a: &SuperVector, b: &SuperVector) -> Result<Grassmann, Error> {
    pairing(a, b).sqrt()
}

/// `g·A`, read off from `g^{st} M_A g`.
pub fn act(g: &OspElement, a: &SuperVector) -> SuperVector {
    let m = g.matrix();
    let r = m.supertranspose().mul(&a.to_matrix()).mul(m);
    let [[x1, y, phi], [_, x2, theta], _] = r.m;
    SuperVector { x1, x2, y, phi, theta }
}

/// Fermion label of a light-cone point, raw sign: `√x1·θ − (y/√x1)·φ`.
/// When `x1` has the smaller body the `x2` form `√x2·φ − (y/√x2)·θ` is used
/// instead, multiplied by `−sign(y)` so both branches agree.
pub fn fermion_label_raw(a: &SuperVector) -> Result<Grassmann, Error> {
    let (b1, b2) = (a.x1.body(), a.x2.body());
    if b1 <= 0.0 && b2 <= 0.0 {
        return Err(Error::Degenerate("both x1 and x2 have non-positive body"));
    }
    if b1 >= b2 {
        let r = a.x1.sqrt()?;
        Ok(&(&r * &a.theta) - &(&a.y.div(&r)? * &a.phi))
    } else {
        let l = fermion_label_x2(a)?;
        Ok(if a.y.body() < 0.0 { l } else { -l })
    }
}

/// The `x2` form `√x2·φ − (y/√x2)·θ`. On the light cone it equals the `x1`
/// form times `−sign(y)`.
pub fn fermion_label_x2(a: &SuperVector) -> Result<Grassmann, Error> {
    let r = a.x2.sqrt()?;
    Ok(&(&r * &a.phi) - &(&a.y.div(&r)? * &a.theta))
}

/// Fermion label as a canonical representative of `±ξ` plus the sign with
/// `raw = sign · representative`.
pub fn fermion_label(a: &SuperVector, tol: f64) -> Result<(Grassmann, i8), Error> {
    Ok(fermion_label_raw(a)?.canonical_sign(tol))
}

fn check_cone(a: &SuperVector, tol: f64) -> Result<(), Error> {
    let r = a.light_cone_residual();
    if r > tol {
        return Err(Error::NotOnLightCone { residual: r });
    }
    let [b1, b2, _] = a.bodies();
    if b1 < -tol || b2 < -tol {
        return Err(Error::Degenerate("light-cone point with negative body"));
    }
    Ok(())
}

fn check_special(a: &SuperVector, tol: f64) -> Result<(), Error> {
    check_cone(a, tol)?;
    let l = fermion_label_raw(a)?.max_abs() / a.body_scale();
    if l > tol {
        return Err(Error::NotSpecial { label: l });
    }
    Ok(())
}

/// Rotation `g` in `SO(2)` with `g^T v` pointing along `(1,1)`.
fn rotation_to_diagonal(rank: u8, v: [f64; 2]) -> OspElement {
    let ang = core::f64::consts::FRAC_PI_4 - libm::atan2(v[1], v[0]);
    let (s, c) = (libm::sin(ang), libm::cos(ang));
    // g^T = (c −s / s c)
    OspElement::trusted(SuperMatrix::from_reals(rank, [[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]]))
}

/// Brings a light-cone point to `e_θ = (1,0,0,0,θ)`. Returns the group element and `θ`.
pub fn normalize_point(a: &SuperVector, tol: f64) -> Result<(OspElement, Grassmann), Error> {
    check_cone(a, tol)?;
    let [b1, b2, by] = a.bodies();
    if b1.max(b2) <= tol {
        return Err(Error::Degenerate("light-cone point with zero body"));
    }
    let sc = a.body_scale();
    if b1 > 0.0 && a.x2.max_abs() <= tol * sc && a.y.max_abs() <= tol * sc && a.phi.max_abs() <= tol * sc {
        // already (x1,0,0,0,θ): a diagonal element suffices
        let g = OspElement::diag_inv(&a.x1.sqrt()?.inverse()?)?;
        let theta = act(&g, a).theta;
        return Ok((g, theta));
    }
    let v1 = libm::sqrt(b1.max(0.0));
    let v2 = if by < 0.0 { -libm::sqrt(b2.max(0.0)) } else { libm::sqrt(b2.max(0.0)) };
    let g1 = rotation_to_diagonal(a.rank(), [v1, v2]);
    let a1 = act(&g1, a);
    let p = a1.x2.div(&a1.x1)?.fourth_root()?;
    let g2 = OspElement::diag_inv(&p)?;
    let a2 = act(&g2, &a1);
    let t = a2.x1.clone();
    let ti = t.inverse()?;
    let phi = &ti * &a2.phi;
    let psi = &ti * &a2.theta;
    let g3 = OspElement::gt(&t, &phi, &psi)?;
    let g = g1.mul(&g2).mul(&g3);
    let theta = act(&g, a).theta;
    Ok((g, theta))
}

/// Brings two special light-cone points to `(1,0,0,0,0)` and `s(0,1,0,0,0)`.
/// With the pairing above `s = 2⟨A,B⟩`.
pub fn normalize_pair(a: &SuperVector, b: &SuperVector, tol: f64) -> Result<(OspElement, Grassmann), Error> {
    check_special(a, tol)?;
    check_special(b, tol)?;
    let ab = pairing(a, b);
    if ab.body().abs() <= tol * a.body_scale() * b.body_scale() {
        return Err(Error::Degenerate("points are linearly dependent"));
    }
    let (g1, _) = normalize_point(a, tol)?;
    let b1 = act(&g1, b);
    let x2i = b1.x2.inverse()?;
    let beta = -(&x2i * &b1.theta);
    let c = -(&b1.y * &x2i);
    let g2 = OspElement::stabilizer(&c, &beta, &Grassmann::zero(a.rank()))?;
    let g = g1.mul(&g2);
    let s = act(&g, b).x2;
    Ok((g, s))
}

/// An ordered triple of special light-cone points whose bodies form a
/// positively oriented basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveTriple {
    pub a: SuperVector,
    pub b: SuperVector,
    pub c: SuperVector,
}

fn det3(r: [[f64; 3]; 3]) -> f64 {
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

/// Determinant of the body matrix with rows `(x1, x2, y)` of `A, B, C`.
pub fn orientation(a: &SuperVector, b: &SuperVector, c: &SuperVector) -> f64 {
    det3([a.bodies(), b.bodies(), c.bodies()])
}

impl PositiveTriple {
    pub fn new(a: SuperVector, b: SuperVector, c: SuperVector, tol: f64) -> Result<Self, Error> {
        for p in [&a, &b, &c] {
            check_special(p, tol)?;
        }
        if orientation(&a, &b, &c) <= 1e-12 {
            return Err(Error::NotPositive);
        }
        Ok(PositiveTriple { a, b, c })
    }

    /// `(B, C, A)`.
    pub fn rotated(&self) -> Self {
        PositiveTriple { a: self.b.clone(), b: self.c.clone(), c: self.a.clone() }
    }

    pub fn act(&self, g: &OspElement) -> Self {
        PositiveTriple { a: act(g, &self.a), b: act(g, &self.b), c: act(g, &self.c) }
    }
}

/// Invariants of a positive triple `(A, B, C)`: `a = √⟨A,B⟩`, `b = √⟨C,B⟩`,
/// `e = √⟨C,A⟩`, the normalization coefficients and the odd parameter `φ` of
/// the standard position.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleInvariants {
    pub lambda_a: Grassmann,
    pub lambda_b: Grassmann,
    pub lambda_e: Grassmann,
    pub mu: Grassmann,
    pub r: Grassmann,
    pub s: Grassmann,
    pub t: Grassmann,
}

/// `r = √2·ea/b`, `s = √2·be/a`, `t = √2·ab/e`.
pub fn rst_from_lambdas(a: &Grassmann, b: &Grassmann, e: &Grassmann) -> Result<(Grassmann, Grassmann, Grassmann), Error> {
    let r = (e * a).div(b)?.scale(SQRT2);
    let s = (b * e).div(a)?.scale(SQRT2);
    let t = (a * b).div(e)?.scale(SQRT2);
    Ok((r, s, t))
}

/// Standard position `(r(0,1,0,0,0), t(1,1,1,φ,φ), s(1,0,0,0,0))`.
pub fn standard_triple(r: &Grassmann, s: &Grassmann, t: &Grassmann, phi: &Grassmann) -> PositiveTriple {
    let rank = r.rank();
    PositiveTriple {
        a: SuperVector::e2(rank).scale(r),
        b: SuperVector::diagonal_point(t, phi, phi),
        c: SuperVector::e1(rank).scale(s),
    }
}

/// Finds `g` taking the triple to standard position. `g` is unique up to the
/// fermionic reflection, which flips the sign of `φ`.
pub fn normalize_triple(tr: &PositiveTriple, tol: f64) -> Result<(OspElement, TripleInvariants), Error> {
    let (g1, s0) = normalize_pair(&tr.c, &tr.a, tol)?;
    let b1 = act(&g1, &tr.b);
    if b1.y.body() <= 0.0 || b1.x1.body() <= 0.0 || b1.x2.body() <= 0.0 {
        return Err(Error::NotPositive);
    }
    let p = b1.x2.div(&b1.x1)?.fourth_root()?;
    let g2 = OspElement::diag_inv(&p)?;
    let b2 = act(&g2, &b1);
    let t = b2.x1.clone();
    let mu = b2.phi.div(&t)?;
    let s = &p * &p;
    let r = s0.div(&s)?;
    let inv = TripleInvariants {
        lambda_a: lambda_length(&tr.a, &tr.b)?,
        lambda_b: lambda_length(&tr.c, &tr.b)?,
        lambda_e: lambda_length(&tr.c, &tr.a)?,
        mu,
        r,
        s,
        t,
    };
    Ok((g1.mul(&g2), inv))
}

/// Cyclic relabeling of a standard triple. Returns `(r′, s′, t′, φ′)` with
/// `t′ = r, r′ = s, s′ = t, φ′ = φ` and the element of order three mapping
/// `A ↦ t′(1,1,1,φ,φ)`, `B ↦ s′(1,0,0,0,0)`, `C ↦ r′(0,1,0,0,0)`.
pub fn prime_transform(
    r: &Grassmann,
    s: &Grassmann,
    t: &Grassmann,
    phi: &Grassmann,
) -> Result<(Grassmann, Grassmann, Grassmann, Grassmann, OspElement), Error> {
    let g = OspElement::prime(phi)?;
    Ok((s.clone(), t.clone(), r.clone(), phi.clone(), g))
}

/// μ-invariant of a positive triple as `(representative, sign)` with `φ = sign · representative`.
pub fn mu_invariant(tr: &PositiveTriple, tol: f64) -> Result<(Grassmann, i8), Error> {
    let (_, inv) = normalize_triple(tr, tol)?;
    Ok(inv.mu.canonical_sign(tol))
}

/// Output of [`switch_transform`].
#[derive(Clone, Debug)]
pub struct Switch {
    pub g: OspElement,
    pub s_hat: Grassmann,
    pub r_hat: Grassmann,
    pub t_hat: Grassmann,
    /// `σ = −(x1/x2)^{1/4} λ / √(x1x2)`.
    pub sigma: Grassmann,
    /// `σ = (x2/x1)^{1/4} ρ / √(x1x2)`.
    pub sigma_from_rho: Grassmann,
}

/// With `A = r(0,1,0,0,0)`, `C = s(1,0,0,0,0)` and `D = (x1, x2, −y, ρ, λ)`,
/// the element `rotate90 · diag(q, 1/q)`, `q = (x1/x2)^{1/4}`, sends them to
/// `ŝ(1,0,0,0,0)`, `r̂(0,1,0,0,0)` and `t̂(1,1,1,σ,σ)`.
pub fn switch_transform(a: &SuperVector, c: &SuperVector, d: &SuperVector, tol: f64) -> Result<Switch, Error> {
    let r = &a.x2;
    let s = &c.x1;
    if a.max_diff(&SuperVector::e2(a.rank()).scale(r)) > tol || c.max_diff(&SuperVector::e1(c.rank()).scale(s)) > tol {
        return Err(Error::Degenerate("A and C must be in standard position"));
    }
    let ratio = d.x1.div(&d.x2)?;
    let q = ratio.fourth_root()?;
    let g = OspElement::rotate90(a.rank()).mul(&OspElement::diag_inv(&q)?);
    let sq = ratio.sqrt()?;
    let t_hat = (&d.x1 * &d.x2).sqrt()?;
    let ti = t_hat.inverse()?;
    Ok(Switch {
        s_hat: &sq * r,
        r_hat: &sq.inverse()? * s,
        sigma: -(&(&q * &d.theta) * &ti),
        sigma_from_rho: &(&q.inverse()? * &d.phi) * &ti,
        t_hat,
        g,
    })
}

/// `χ = ac/(bd)`.
pub fn cross_ratio(a: &Grassmann, b: &Grassmann, c: &Grassmann, d: &Grassmann) -> Result<Grassmann, Error> {
    (a * c).div(&(b * d))
}

/// The fourth point `D = (x1, x2, −y, ρ, λ)` of a quadrilateral whose
/// triangle `CBA` is in standard position and whose triangle `ACD` has
/// μ-invariant `σ`. With `k = √2·cd/e`: `x1 = k/χ`, `x2 = kχ`, `y = k`,
/// `λ = −k√χ σ`, `ρ = kχ^{−1/2} σ`.
pub fn basic_calculation(
    a: &Grassmann,
    b: &Grassmann,
    c: &Grassmann,
    d: &Grassmann,
    e: &Grassmann,
    sigma: &Grassmann,
) -> Result<SuperVector, Error> {
    let chi = cross_ratio(a, b, c, d)?;
    let k = (c * d).div(e)?.scale(SQRT2);
    let rc = chi.sqrt()?;
    let x1 = k.div(&chi)?;
    let x2 = &k * &chi;
    let lam = -(&(&k * &rc) * sigma);
    let rho = &k.div(&rc)? * sigma;
    SuperVector::new(x1, x2, -&k, rho, lam)
}

/// `f = (ac+bd)(1 + σθ√χ/(1+χ))/e`.
pub fn ptolemy_even(
    a: &Grassmann,
    b: &Grassmann,
    c: &Grassmann,
    d: &Grassmann,
    e: &Grassmann,
    sigma: &Grassmann,
    theta: &Grassmann,
) -> Result<Grassmann, Error> {
    let chi = cross_ratio(a, b, c, d)?;
    let w = chi.sqrt()?.div(&(&chi + 1.0))?;
    let corr = &(&(sigma * theta) * &w) + 1.0;
    (&(&(a * c) + &(b * d)) * &corr).div(e)
}

/// `ν = (σ + θ√χ)/√(1+χ)`, `μ = (σ√χ − θ)/√(1+χ)`.
pub fn ptolemy_odd(sigma: &Grassmann, theta: &Grassmann, chi: &Grassmann) -> Result<(Grassmann, Grassmann), Error> {
    if chi.body() <= 0.0 {
        return Err(Error::NonPositiveBody);
    }
    let rc = chi.sqrt()?;
    let n = (&chi.clone() + 1.0).sqrt()?.inverse()?;
    let nu = &(sigma + &(theta * &rc)) * &n;
    let mu = &(&(sigma * &rc) - theta) * &n;
    Ok((nu, mu))
}

/// Complex Grassmann number stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexGrassmann {
    pub re: Grassmann,
    pub im: Grassmann,
}

impl ComplexGrassmann {
    pub fn real(re: Grassmann) -> Self {
        let im = Grassmann::zero(re.rank());
        ComplexGrassmann { re, im }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexGrassmann { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexGrassmann {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    /// Inverse of an even complex number with nonzero body.
    pub fn inverse(&self) -> Result<Self, Error> {
        let n = (&(&self.re * &self.re) + &(&self.im * &self.im)).inverse()?;
        Ok(ComplexGrassmann { re: &self.re * &n, im: -(&self.im * &n) })
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.re.max_diff(&o.re).max(self.im.max_diff(&o.im))
    }
}

/// A point `(z, η)` of the superplane.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperPlanePoint {
    pub z: ComplexGrassmann,
    pub eta: ComplexGrassmann,
}

impl SuperPlanePoint {
    pub fn max_diff(&self, o: &Self) -> f64 {
        self.z.max_diff(&o.z).max(self.eta.max_diff(&o.eta))
    }
}

/// Hyperboloid to superplane: `z = (i − y − iφθ)/x2`, `η = (θ/x2)(1 + iy) − iφ`.
pub fn superplane_map(a: &SuperVector, tol: f64) -> Result<SuperPlanePoint, Error> {
    let s = a.body_scale();
    let r = (&pairing(a, a) + -1.0).max_abs() / (s * s);
    if r > tol {
        return Err(Error::Degenerate("point is not on the unit hyperboloid"));
    }
    if a.x2.body() <= 0.0 {
        return Err(Error::NonPositiveBody);
    }
    let xi = a.x2.inverse()?;
    let pt = &a.phi * &a.theta;
    let z = ComplexGrassmann { re: -(&a.y * &xi), im: &(&pt.scale(-1.0) + 1.0) * &xi };
    let tx = &a.theta * &xi;
    let eta = ComplexGrassmann { re: tx.clone(), im: &(&tx * &a.y) - &a.phi };
    Ok(SuperPlanePoint { z, eta })
}

/// The matrix `D g^{st} D`, `D = diag(1, −1, 1)`, whose entries drive the
/// superconformal transformation matching `act(g, ·)` under [`superplane_map`].
pub fn superplane_matrix(g: &OspElement) -> SuperMatrix {
    let d = SuperMatrix::from_reals(g.rank(), [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]);
    d.mul(&g.matrix().supertranspose()).mul(&d)
}

/// Superconformal transformation by the entries of `h`:
/// `z ↦ (az+b)/(cz+d) + η(γz+δ)/(cz+d)²`, `η ↦ (γz+δ)/(cz+d) + η(1 + ½δγ)/(cz+d)`.
/// With `half_term = false` the factor `1 + ½δγ` is replaced by `1`.
pub fn superconformal(h: &SuperMatrix, p: &SuperPlanePoint, half_term: bool) -> Result<SuperPlanePoint, Error> {
    let e = |i: usize, j: usize| ComplexGrassmann::real(h.m[i][j].clone());
    let (a, b, c, d, ga, de) = (e(0, 0), e(0, 1), e(1, 0), e(1, 1), e(2, 0), e(2, 1));
    let den = c.mul(&p.z).add(&d);
    let deni = den.inverse()?;
    let num = a.mul(&p.z).add(&b);
    let odd = ga.mul(&p.z).add(&de);
    let z = num.mul(&deni).add(&p.eta.mul(&odd).mul(&deni).mul(&deni));
    let eta = if half_term {
        let k = ComplexGrassmann::real(&(&h.m[2][1] * &h.m[2][0]).scale(0.5) + 1.0);
        odd.mul(&deni).add(&p.eta.mul(&k).mul(&deni))
    } else {
        odd.mul(&deni).add(&p.eta.mul(&deni))
    };
    Ok(SuperPlanePoint { z, eta })
}

/// Special light cone to `ℝP^{1|1}`: `z = −y/x2`, `η = θ/x2`.
pub fn rp11_map(a: &SuperVector) -> Result<(Grassmann, Grassmann), Error> {
    if a.x2.body() <= 0.0 {
        return Err(Error::NonPositiveBody);
    }
    let xi = a.x2.inverse()?;
    Ok((-(&a.y * &xi), &a.theta * &xi))
}

/// Short text for reports: body and largest soul coefficient.
pub fn summary(x: &Grassmann) -> String {
    alloc::format!("{} (soul {:e})", x.body(), x.soul().max_abs())
}
