//! `(2|1)×(2|1)` even supermatrices and the supergroup `OSp(1|2)`.
//!
//! Entries are laid out as
//!
//! ```text
//! a b α
//! c d β
//! γ δ f
//! ```
//!
//! with `a,b,c,d,f` even and `α,β,γ,δ` odd. Products use the signed block
//! rule `(AA'−BC', AB'+BD' / CA'+DC', DD'−CB')`: a term picks up a minus sign
//! when its row and column lie in the same block and the summation index lies
//! in the other one.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::grassmann::{Grassmann, Parity};

fn block(i: usize) -> usize {
    if i < 2 {
        0
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuperMatrix {
    pub m: [[Grassmann; 3]; 3],
}

impl SuperMatrix {
    /// Wraps a grid, checking the even/odd block pattern.
    pub fn new(m: [[Grassmann; 3]; 3]) -> Result<Self, Error> {
        let rank = m[0][0].rank();
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x.rank() != rank {
                    return Err(Error::RankMismatch { left: rank, right: x.rank() });
                }
                let ok = if block(i) == block(j) { x.is_even() } else { x.is_odd() };
                if !ok {
                    return Err(Error::WrongParity(if block(i) == block(j) { "diagonal block entry" } else { "off-diagonal block entry" }));
                }
            }
        }
        Ok(SuperMatrix { m })
    }

    /// Grid of real numbers placed in the bodies. Off-diagonal block entries must be zero.
    pub fn from_reals(rank: u8, r: [[f64; 3]; 3]) -> Self {
        let m = r.map(|row| row.map(|x| Grassmann::scalar(rank, x)));
        SuperMatrix { m }
    }

    pub fn identity(rank: u8) -> Self {
        Self::from_reals(rank, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// The form `J` preserved by `OSp(1|2)`.
    pub fn j(rank: u8) -> Self {
        Self::from_reals(rank, [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])
    }

    pub fn j_inverse(rank: u8) -> Self {
        Self::from_reals(rank, [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])
    }

    pub fn rank(&self) -> u8 {
        self.m[0][0].rank()
    }

    pub fn get(&self, i: usize, j: usize) -> &Grassmann {
        &self.m[i][j]
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        let rank = self.rank();
        let mut out = Self::from_reals(rank, [[0.0; 3]; 3]);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Grassmann::zero(rank);
                for k in 0..3 {
                    let t = &self.m[i][k] * &other.m[k][j];
                    if block(i) == block(j) && block(k) != block(i) {
                        acc -= &t;
                    } else {
                        acc += &t;
                    }
                }
                out.m[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// Signed product. Panics on rank mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("supermatrix rank mismatch")
    }

    /// `(a c γ / b d δ / −α −β f)`.
    pub fn supertranspose(&self) -> Self {
        let m = &self.m;
        SuperMatrix {
            m: [
                [m[0][0].clone(), m[1][0].clone(), m[2][0].clone()],
                [m[0][1].clone(), m[1][1].clone(), m[2][1].clone()],
                [-&m[0][2], -&m[1][2], m[2][2].clone()],
            ],
        }
    }

    /// Berezinian `f⁻¹·det(A + B f⁻¹ C)` with the plus sign inside.
    pub fn sdet(&self) -> Result<Grassmann, Error> {
        let m = &self.m;
        let fi = m[2][2].inverse()?;
        let e = |i: usize, j: usize| &m[i][j] + &(&(&m[i][2] * &fi) * &m[2][j]);
        let det = &(&e(0, 0) * &e(1, 1)) - &(&e(0, 1) * &e(1, 0));
        Ok(&fi * &det)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                r = r.max(self.m[i][j].max_diff(&other.m[i][j]));
            }
        }
        r
    }

    fn body_scale(&self) -> f64 {
        let mut s: f64 = 1.0;
        for row in &self.m {
            for x in row {
                s = s.max(x.body().abs());
            }
        }
        s
    }

    /// Residuals of the six entry constraints
    /// `f = 1+αβ, ad−bc = f⁻¹, δ = bβ−dα, γ = aβ−cα, α = bγ−aδ, dγ−cδ = β`.
    pub fn constraint_residuals(&self) -> Result<[f64; 6], Error> {
        let [[a, b, al], [c, d, be], [ga, de, f]] = &self.m;
        Ok([
            f.max_diff(&(&(al * be) + 1.0)),
            (&(a * d) - &(b * c)).max_diff(&f.inverse()?),
            de.max_diff(&(&(b * be) - &(d * al))),
            ga.max_diff(&(&(a * be) - &(c * al))),
            al.max_diff(&(&(b * ga) - &(a * de))),
            (&(d * ga) - &(c * de)).max_diff(be),
        ])
    }

    /// Largest of `|g^{st} J g − J|`, `|sdet g − 1|` and the entry-constraint
    /// residuals, divided by the squared largest entry body (at least 1).
    pub fn osp_residual(&self) -> f64 {
        let rank = self.rank();
        let j = Self::j(rank);
        let lhs = self.supertranspose().mul(&j).mul(self);
        let mut r = lhs.max_diff(&j);
        match self.sdet() {
            Ok(s) => r = r.max(s.max_diff(&Grassmann::one(rank))),
            Err(_) => return f64::INFINITY,
        }
        match self.constraint_residuals() {
            Ok(cs) => {
                for x in cs {
                    r = r.max(x);
                }
            }
            Err(_) => return f64::INFINITY,
        }
        let s = self.body_scale();
        r / (s * s)
    }

    pub fn is_osp(&self, tol: f64) -> bool {
        self.osp_residual() <= tol
    }

    /// Bodies of the upper-left block.
    pub fn bosonic_reduction(&self) -> [[f64; 2]; 2] {
        [[self.m[0][0].body(), self.m[0][1].body()], [self.m[1][0].body(), self.m[1][1].body()]]
    }

    /// Row-major grid, one row per line, entries separated by ` | `.
    pub fn parse(rank: u8, text: &str) -> Result<Self, Error> {
        let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        if rows.len() != 3 {
            return Err(Error::Parse("supermatrix needs three rows"));
        }
        let mut m = SuperMatrix::identity(rank).m;
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.split('|').collect();
            if cells.len() != 3 {
                return Err(Error::Parse("supermatrix row needs three '|'-separated entries"));
            }
            for (j, cell) in cells.iter().enumerate() {
                m[i][j] = Grassmann::parse(rank, cell)?;
            }
        }
        SuperMatrix::new(m)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            writeln!(f, "{} | {} | {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// A supermatrix that passed the membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct OspElement(SuperMatrix);

/// Default membership tolerance.
pub const OSP_TOL: f64 = 1e-9;

fn need(x: &Grassmann, p: Parity, what: &'static str) -> Result<(), Error> {
    let ok = match p {
        Parity::Even => x.is_even(),
        Parity::Odd => x.is_odd(),
        Parity::Mixed => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::WrongParity(what))
    }
}

impl OspElement {
    pub fn new(m: SuperMatrix, tol: f64) -> Result<Self, Error> {
        let r = m.osp_residual();
        if r <= tol {
            Ok(OspElement(m))
        } else {
            Err(Error::NotMember { residual: r })
        }
    }

    /// Wraps a matrix known to be a member by construction.
    pub(crate) fn trusted(m: SuperMatrix) -> Self {
        debug_assert!(m.osp_residual() < 1e-6, "residual {}", m.osp_residual());
        OspElement(m)
    }

    pub fn matrix(&self) -> &SuperMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> SuperMatrix {
        self.0
    }

    pub fn rank(&self) -> u8 {
        self.0.rank()
    }

    pub fn mul(&self, other: &Self) -> Self {
        OspElement(self.0.mul(&other.0))
    }

    /// `J⁻¹ g^{st} J`.
    pub fn inverse(&self) -> Self {
        let r = self.rank();
        OspElement(SuperMatrix::j_inverse(r).mul(&self.0.supertranspose()).mul(&SuperMatrix::j(r)))
    }

    pub fn bosonic_reduction(&self) -> [[f64; 2]; 2] {
        self.0.bosonic_reduction()
    }

    pub fn bosonic_trace(&self) -> f64 {
        let b = self.bosonic_reduction();
        b[0][0] + b[1][1]
    }

    pub fn identity(rank: u8) -> Self {
        OspElement(SuperMatrix::identity(rank))
    }

    /// The fermionic reflection `diag(−1,−1,1)`.
    pub fn reflection(rank: u8) -> Self {
        OspElement(SuperMatrix::from_reals(rank, [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]))
    }

    /// `(0 1 0 / −1 0 0 / 0 0 1)`.
    pub fn rotate90(rank: u8) -> Self {
        OspElement(SuperMatrix::from_reals(rank, [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]))
    }

    /// `diag(p, q, 1)`; requires even `p, q` with `pq = 1`.
    pub fn diag(p: &Grassmann, q: &Grassmann) -> Result<Self, Error> {
        need(p, Parity::Even, "diag entry")?;
        need(q, Parity::Even, "diag entry")?;
        let r = p.rank();
        let z = Grassmann::zero(r);
        let m = SuperMatrix {
            m: [
                [p.clone(), z.clone(), z.clone()],
                [z.clone(), q.clone(), z.clone()],
                [z.clone(), z.clone(), Grassmann::one(r)],
            ],
        };
        OspElement::new(m, OSP_TOL)
    }

    /// `diag(p, 1/p, 1)`.
    pub fn diag_inv(p: &Grassmann) -> Result<Self, Error> {
        Self::diag(p, &p.inverse()?)
    }

    /// Stabilizer of `e_θ = (1,0,0,0,θ)`:
    /// `(1+cθβ  θβ  −cθ / c  1+cθβ  β / β+c²θ  cθ  1+cβθ)`.
    pub fn stabilizer(c: &Grassmann, beta: &Grassmann, theta: &Grassmann) -> Result<Self, Error> {
        need(c, Parity::Even, "stabilizer c")?;
        need(beta, Parity::Odd, "stabilizer β")?;
        need(theta, Parity::Odd, "stabilizer θ")?;
        let ctb = &(c * theta) * beta;
        let cbt = &(c * beta) * theta;
        let m = SuperMatrix {
            m: [
                [&ctb + 1.0, theta * beta, -(c * theta)],
                [c.clone(), &ctb + 1.0, beta.clone()],
                [beta + &(&(c * c) * theta), c * theta, &cbt + 1.0],
            ],
        };
        Ok(OspElement::trusted(m))
    }

    /// `g^t_{φ,ψ} = (0 −√t 0 / 1/√t √t(1+φψ) −ψ / 0 √tψ 1)`, the element taking
    /// `t(1,1,1+φψ,φ,ψ)` to `e_θ`.
    pub fn gt(t: &Grassmann, phi: &Grassmann, psi: &Grassmann) -> Result<Self, Error> {
        need(t, Parity::Even, "gt t")?;
        need(phi, Parity::Odd, "gt φ")?;
        need(psi, Parity::Odd, "gt ψ")?;
        let r = t.sqrt()?;
        let z = Grassmann::zero(t.rank());
        let m = SuperMatrix {
            m: [
                [z.clone(), -&r, z.clone()],
                [r.inverse()?, &r * &(&(phi * psi) + 1.0), -psi],
                [z, &r * psi, Grassmann::one(t.rank())],
            ],
        };
        Ok(OspElement::trusted(m))
    }

    /// The cube root of unity `(0 1 0 / −1 −1 −φ / 0 −φ 1)` cycling a standard triple.
    pub fn prime(phi: &Grassmann) -> Result<Self, Error> {
        need(phi, Parity::Odd, "prime φ")?;
        let r = phi.rank();
        let z = Grassmann::zero(r);
        let one = Grassmann::one(r);
        let m = SuperMatrix {
            m: [
                [z.clone(), one.clone(), z.clone()],
                [-&one, -&one, -phi],
                [z, -phi, one],
            ],
        };
        Ok(OspElement::trusted(m))
    }
}

impl fmt::Display for OspElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Text for a bosonic 2×2 matrix, used in reports.
pub fn format_sl2(b: &[[f64; 2]; 2]) -> String {
    alloc::format!("[[{}, {}], [{}, {}]]", b[0][0], b[0][1], b[1][0], b[1][1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    const R: u8 = 5;

    fn g(k: usize) -> Grassmann {
        Grassmann::generator(R, k)
    }

    fn s(x: f64) -> Grassmann {
        Grassmann::scalar(R, x)
    }

    #[test]
    fn reflection_squares_to_identity() {
        let gr = OspElement::reflection(R);
        assert_eq!(gr.mul(&gr), OspElement::identity(R));
        assert_eq!(gr.inverse(), gr);
        assert_eq!(gr.bosonic_reduction(), [[-1.0, 0.0], [0.0, -1.0]]);
    }

    #[test]
    fn gt_at_unit_parameters() {
        let z = Grassmann::zero(R);
        let e = OspElement::gt(&s(1.0), &z, &z).unwrap();
        assert_eq!(e.matrix(), &SuperMatrix::from_reals(R, [[0.0, -1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]));
    }

    #[test]
    fn named_elements_are_members() {
        let c = &s(0.7) + &(&g(1) * &g(2)).scale(0.3);
        assert!(OspElement::stabilizer(&c, &g(3), &g(4)).unwrap().matrix().is_osp(1e-12));
        assert!(OspElement::gt(&s(2.0), &g(1), &g(2)).unwrap().matrix().is_osp(1e-12));
        assert!(OspElement::prime(&g(5)).unwrap().matrix().is_osp(1e-12));
        assert!(OspElement::rotate90(R).matrix().is_osp(0.0));
        let p = s(2.0).sqrt().unwrap();
        let d = OspElement::diag_inv(&p).unwrap();
        assert!((d.matrix().sdet().unwrap().body() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn perturbed_member_fails() {
        let mut m = OspElement::stabilizer(&s(0.4), &g(1), &g(2)).unwrap().into_matrix();
        m.m[0][1] = &m.m[0][1] + 1e-3;
        assert!(!m.is_osp(1e-9));
    }

    #[test]
    fn wrong_parity_rejected() {
        assert!(OspElement::stabilizer(&g(1), &g(2), &g(3)).is_err());
        let mut m = SuperMatrix::identity(R).m;
        m[0][2] = s(1.0);
        assert!(SuperMatrix::new(m).is_err());
    }

    #[test]
    fn prime_cubes_to_identity() {
        let p = OspElement::prime(&g(2).scale(0.8)).unwrap();
        let p3 = p.mul(&p).mul(&p);
        assert!(p3.matrix().max_diff(&SuperMatrix::identity(R)) < 1e-14);
    }

    #[test]
    fn inverse_of_stabilizer() {
        let h = OspElement::stabilizer(&s(-1.3), &g(1), &g(3)).unwrap();
        let prod = h.mul(&h.inverse());
        assert!(prod.matrix().max_diff(&SuperMatrix::identity(R)) < 1e-14);
    }

    #[test]
    fn text_round_trip() {
        let h = OspElement::stabilizer(&s(0.25), &g(1), &g(3)).unwrap();
        let text = h.matrix().to_string();
        assert_eq!(&SuperMatrix::parse(R, &text).unwrap(), h.matrix());
    }
}
