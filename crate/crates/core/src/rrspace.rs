//! The Riemann–Roch space L(G) for G = m(P₂ + … + P_q).
//!
//! Every function in L(G) has the shape f = (y·g(x, y) + ε·x^m) / x^m with
//! deg g ≤ m − 2, so a function is stored by the coefficients of g (one per
//! monomial x^i y^j, i + j ≤ m − 2) together with ε.

use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, HermitianCurve};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

pub fn check_multiplicity(q: u32, m: usize) -> Result<()> {
    let max = q as usize - 1;
    if m < 2 || m > max {
        return Err(Error::MultiplicityOutOfRange { m, max });
    }
    Ok(())
}

/// Monomials (i, j) ↦ x^i y^j with i + j ≤ m − 2, ordered by (i + j, i).
pub fn monomials(m: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for total in 0..=(m as u32).saturating_sub(2) {
        if m < 2 {
            break;
        }
        for i in 0..=total {
            out.push((i, total - i));
        }
    }
    out
}

/// G = m(P₂ + … + P_q), supported on the interior chord points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorG {
    pub m: usize,
    pub support: Vec<CurvePoint>,
}

impl DivisorG {
    pub fn new(curve: &HermitianCurve, m: usize) -> Result<DivisorG> {
        check_multiplicity(curve.q(), m)?;
        let chord = curve.chord_points();
        let support = chord[1..chord.len() - 1].to_vec();
        Ok(DivisorG { m, support })
    }

    pub fn degree(&self) -> usize {
        self.m * self.support.len()
    }

    /// ½m(m − 1) + 1.
    pub fn dimension(&self) -> usize {
        self.m * (self.m - 1) / 2 + 1
    }
}

/// f = (y·g(x, y) + ε·x^m) / x^m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrFunction {
    pub m: usize,
    /// Coefficients of g, indexed like [`monomials`].
    pub gcoeffs: Vec<FieldElement>,
    pub eps: FieldElement,
}

impl RrFunction {
    pub fn zero(m: usize) -> RrFunction {
        RrFunction {
            m,
            gcoeffs: vec![FieldElement::ZERO; m * (m - 1) / 2],
            eps: FieldElement::ZERO,
        }
    }

    pub fn constant(m: usize, c: FieldElement) -> RrFunction {
        RrFunction {
            eps: c,
            ..RrFunction::zero(m)
        }
    }

    /// Coordinates in basis order: ε first, then g's coefficients.
    pub fn coordinates(&self) -> Vec<FieldElement> {
        std::iter::once(self.eps)
            .chain(self.gcoeffs.iter().copied())
            .collect()
    }

    pub fn from_coordinates(m: usize, coords: &[FieldElement]) -> RrFunction {
        assert_eq!(coords.len(), m * (m - 1) / 2 + 1);
        RrFunction {
            m,
            gcoeffs: coords[1..].to_vec(),
            eps: coords[0],
        }
    }

    /// g(x, y).
    pub fn g_at(&self, field: &Field, x: FieldElement, y: FieldElement) -> FieldElement {
        field.sum(
            monomials(self.m)
                .into_iter()
                .zip(&self.gcoeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, j), &c)| {
                    field.mul(c, field.mul(field.pow(x, i as u64), field.pow(y, j as u64)))
                }),
        )
    }

    /// Value at an affine point with nonzero x.
    pub fn evaluate(&self, field: &Field, pt: &CurvePoint) -> Result<FieldElement> {
        let (x, y) = pt.xy().ok_or(Error::PointAtInfinity)?;
        if x.is_zero() {
            return Err(Error::PoleEvaluation);
        }
        let xm = field.pow(x, self.m as u64);
        let num = field.add(field.mul(y, self.g_at(field, x, y)), field.mul(self.eps, xm));
        field.div(num, xm)
    }
}

/// The ½m(m − 1) + 1 basis functions: the constant 1, then y·x^i y^j / x^m
/// in monomial order.
pub fn basis(q: u32, m: usize) -> Result<Vec<RrFunction>> {
    check_multiplicity(q, m)?;
    let slots = m * (m - 1) / 2;
    let mut out = vec![RrFunction::constant(m, FieldElement::ONE)];
    for s in 0..slots {
        let mut f = RrFunction::zero(m);
        f.gcoeffs[s] = FieldElement::ONE;
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        let b = basis(3, 2).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].eps, FieldElement::ONE);
        assert_eq!(monomials(2), vec![(0, 0)]);

        assert_eq!(basis(5, 3).unwrap().len(), 4);
        assert_eq!(monomials(3), vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(basis(5, 4).unwrap().len(), 7);
    }

    #[test]
    fn multiplicity_range() {
        assert!(matches!(
            basis(5, 1),
            Err(Error::MultiplicityOutOfRange { m: 1, max: 4 })
        ));
        assert!(basis(5, 5).is_err());
        assert!(basis(3, 3).is_err());
    }

    #[test]
    fn divisor_degree_and_dimension() {
        for q in [3u32, 4, 5, 7, 8] {
            let c = HermitianCurve::with_q(q).unwrap();
            for m in 2..q as usize {
                let g = DivisorG::new(&c, m).unwrap();
                assert_eq!(g.degree(), m * (q as usize - 1));
                assert_eq!(g.dimension(), basis(q, m).unwrap().len());
                let orbit = c.orbit_of(&c.canonical_orbit_spec());
                assert!(g.support.iter().all(|p| !orbit.contains(p)));
            }
        }
    }

    #[test]
    fn evaluation_of_basic_functions() {
        let c = HermitianCurve::with_q(3).unwrap();
        let f = c.field();
        let spec = c.canonical_orbit_spec();
        let b = basis(3, 2).unwrap();
        for pt in c.orbit_of(&spec) {
            assert_eq!(b[0].evaluate(f, &pt).unwrap(), FieldElement::ONE);
            let (u, v) = pt.xy().unwrap();
            let expected = f.mul(v, f.inv(f.mul(u, u)).unwrap());
            assert_eq!(b[1].evaluate(f, &pt).unwrap(), expected);
        }
    }

    #[test]
    fn pole_and_infinity_rejected() {
        let f = Field::with_q(3).unwrap();
        let one = RrFunction::constant(2, FieldElement::ONE);
        assert_eq!(
            one.evaluate(&f, &CurvePoint::origin()),
            Err(Error::PoleEvaluation)
        );
        assert_eq!(
            one.evaluate(&f, &CurvePoint::y_infinity()),
            Err(Error::PointAtInfinity)
        );
    }

    #[test]
    fn y_over_x2_plus_eps_zero_count() {
        let c = HermitianCurve::with_q(3).unwrap();
        let f = c.field();
        let spec = c.canonical_orbit_spec();
        let orbit = c.orbit_of(&spec);
        // a = 1; choose ε with N(-ε/τ) = 1.
        let eps = f
            .nonzero_elements()
            .find(|&e| f.norm(f.div(f.neg(e), spec.tau).unwrap()) == FieldElement::ONE)
            .unwrap();
        let func = RrFunction {
            m: 2,
            gcoeffs: vec![FieldElement::ONE],
            eps,
        };
        let zeros = orbit
            .iter()
            .filter(|pt| func.evaluate(f, pt).unwrap().is_zero())
            .count();
        // Zeros are the roots of X^{q-1} = -eps/tau, so q - 1 of them.
        assert_eq!(zeros, 2);
    }
}
