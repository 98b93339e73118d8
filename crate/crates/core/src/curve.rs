//! The Hermitian curve X₂^q X₃ + X₂ X₃^q = X₁^{q+1} over F_{q²}, the
//! chord through O = (0:0:1) and Y∞ = (0:1:0), the cyclic two-point
//! stabilizer Γ = {diag(λ, λ^{q+1}, 1)} and the rational curves
//! C_τ : X₂ X₃^q = τ X₁^{q+1} that carry its orbits.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// A point of PG(2, q²), scaled so that its last nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x1: FieldElement,
    pub x2: FieldElement,
    pub x3: FieldElement,
}

impl CurvePoint {
    pub fn affine(x: FieldElement, y: FieldElement) -> CurvePoint {
        CurvePoint {
            x1: x,
            x2: y,
            x3: FieldElement::ONE,
        }
    }

    /// Normalizes homogeneous coordinates; `None` for (0,0,0).
    pub fn new(
        field: &Field,
        x1: FieldElement,
        x2: FieldElement,
        x3: FieldElement,
    ) -> Option<CurvePoint> {
        let last = [x3, x2, x1].into_iter().find(|c| !c.is_zero())?;
        let s = field.inv(last).ok()?;
        Some(CurvePoint {
            x1: field.mul(x1, s),
            x2: field.mul(x2, s),
            x3: field.mul(x3, s),
        })
    }

    pub fn origin() -> CurvePoint {
        CurvePoint::affine(FieldElement::ZERO, FieldElement::ZERO)
    }

    pub fn y_infinity() -> CurvePoint {
        CurvePoint {
            x1: FieldElement::ZERO,
            x2: FieldElement::ONE,
            x3: FieldElement::ZERO,
        }
    }

    pub fn is_affine(&self) -> bool {
        !self.x3.is_zero()
    }

    /// `(x, y)` for affine points.
    pub fn xy(&self) -> Option<(FieldElement, FieldElement)> {
        self.is_affine().then_some((self.x1, self.x2))
    }

    pub fn encs(&self) -> [u32; 3] {
        [self.x1.enc(), self.x2.enc(), self.x3.enc()]
    }
}

#[derive(Clone, Debug)]
pub struct HermitianCurve {
    field: Arc<Field>,
}

impl HermitianCurve {
    pub fn new(field: Arc<Field>) -> HermitianCurve {
        HermitianCurve { field }
    }

    pub fn with_q(q: u32) -> Result<HermitianCurve> {
        Ok(HermitianCurve::new(Arc::new(Field::with_q(q)?)))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn genus(&self) -> u32 {
        let q = self.q();
        q * (q - 1) / 2
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        let f = &*self.field;
        let q = f.q() as u64;
        let lhs = f.add(
            f.mul(f.pow(pt.x2, q), pt.x3),
            f.mul(pt.x2, f.pow(pt.x3, q)),
        );
        lhs == f.pow(pt.x1, q + 1)
    }

    /// All q³ + 1 rational points: affine points ordered by (x, y), then Y∞.
    pub fn points(&self) -> Vec<CurvePoint> {
        let f = &*self.field;
        let q = f.q() as u64;
        // Bucket y by its trace so each x costs one lookup.
        let mut by_trace = vec![Vec::new(); f.order() as usize];
        for y in f.elements() {
            by_trace[f.trace(y).index()].push(y);
        }
        let mut out = Vec::with_capacity((q * q * q + 1) as usize);
        for x in f.elements() {
            let n = f.pow(x, q + 1);
            out.extend(by_trace[n.index()].iter().map(|&y| CurvePoint::affine(x, y)));
        }
        out.push(CurvePoint::y_infinity());
        out
    }

    /// The q + 1 points P₁ = O, P₂, …, P_q, P_{q+1} = Y∞ on the chord OY∞.
    /// Interior points (0 : b : 1) with b^q + b = 0, b ≠ 0 are ordered by b.
    pub fn chord_points(&self) -> Vec<CurvePoint> {
        let mut out = vec![CurvePoint::origin()];
        out.extend(
            self.chord_interior()
                .into_iter()
                .map(|b| CurvePoint::affine(FieldElement::ZERO, b)),
        );
        out.push(CurvePoint::y_infinity());
        out
    }

    /// The nonzero b with b^q + b = 0.
    pub fn chord_interior(&self) -> Vec<FieldElement> {
        let f = &*self.field;
        f.nonzero_elements()
            .filter(|&b| f.trace(b).is_zero())
            .collect()
    }

    /// Applies M_λ = diag(λ, λ^{q+1}, 1).
    pub fn gamma_apply(&self, lambda: FieldElement, pt: &CurvePoint) -> Result<CurvePoint> {
        if lambda.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let f = &*self.field;
        let x1 = f.mul(lambda, pt.x1);
        let x2 = f.mul(f.norm(lambda), pt.x2);
        Ok(CurvePoint::new(f, x1, x2, pt.x3).expect("M_lambda is invertible"))
    }

    /// The affine point chosen as default base point: smallest nonzero u,
    /// then the smallest v with v^q + v = u^{q+1}.
    pub fn canonical_orbit_spec(&self) -> OrbitSpec {
        let f = &*self.field;
        f.nonzero_elements()
            .find_map(|u| {
                let n = f.norm(u);
                f.elements()
                    .find(|&v| f.trace(v) == n)
                    .map(|v| OrbitSpec::new(f, u, v).expect("point is on the curve"))
            })
            .expect("the trace is surjective")
    }

    /// One base point per Γ-orbit on the affine points off the chord, each the
    /// smallest (u, v) of its orbit, in increasing order.
    pub fn orbit_representatives(&self) -> Vec<OrbitSpec> {
        let f = &*self.field;
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for pt in self.points() {
            let Some((u, v)) = pt.xy() else { continue };
            if u.is_zero() || seen.contains(&pt) {
                continue;
            }
            let spec = OrbitSpec::new(f, u, v).expect("affine point off the chord");
            seen.extend(self.orbit_of(&spec));
            reps.push(spec);
        }
        reps
    }

    /// Q_i = (ω^i u : ω^{(q+1)i} v : 1) for i = 1, …, q² − 1.
    pub fn orbit_of(&self, spec: &OrbitSpec) -> Vec<CurvePoint> {
        let f = &*self.field;
        let q = f.q() as i64;
        (1..f.order() as i64)
            .map(|i| {
                CurvePoint::affine(
                    f.mul(f.omega_pow(i), spec.u),
                    f.mul(f.omega_pow((q + 1) * i), spec.v),
                )
            })
            .collect()
    }
}

/// X₂ X₃^q − τ X₁^{q+1} = 0.
pub fn on_c_tau(field: &Field, tau: FieldElement, pt: &CurvePoint) -> bool {
    let q = field.q() as u64;
    field.mul(pt.x2, field.pow(pt.x3, q)) == field.mul(tau, field.pow(pt.x1, q + 1))
}

/// Intersection multiplicity of H_q and C_τ at O.
///
/// Substituting Y = τX^{q+1} into Y^q + Y − X^{q+1} gives the sparse
/// polynomial (τ − 1)X^{q+1} + τ^q X^{(q+1)q}; the multiplicity is its
/// lowest exponent carrying a nonzero coefficient.
pub fn imult_at_origin(field: &Field, tau: FieldElement) -> Result<u32> {
    if tau.is_zero() {
        return Err(Error::ZeroTau);
    }
    let q = field.q();
    // Terms (exponent, coefficient) of Y^q, Y and -X^{q+1} after substitution.
    let terms = [
        ((q + 1) * q, field.pow(tau, q as u64)),
        (q + 1, tau),
        (q + 1, field.neg(FieldElement::ONE)),
    ];
    let mut collected: Vec<(u32, FieldElement)> = Vec::new();
    for (e, c) in terms {
        match collected.iter_mut().find(|(ce, _)| *ce == e) {
            Some(slot) => slot.1 = field.add(slot.1, c),
            None => collected.push((e, c)),
        }
    }
    Ok(collected
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| e)
        .min()
        .expect("the leading term tau^q is nonzero"))
}

/// Affine base point (u, v) of an orbit together with τ = 1/(v^{q−1} + 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSpec {
    pub u: FieldElement,
    pub v: FieldElement,
    pub tau: FieldElement,
}

impl OrbitSpec {
    pub fn new(field: &Field, u: FieldElement, v: FieldElement) -> Result<OrbitSpec> {
        if u.is_zero() {
            return Err(Error::InvalidBasePoint("u must be nonzero".into()));
        }
        if field.trace(v) != field.norm(u) {
            return Err(Error::InvalidBasePoint(format!(
                "({u}, {v}) is not on the Hermitian curve"
            )));
        }
        let q = field.q() as u64;
        let denom = field.add(field.pow(v, q - 1), FieldElement::ONE);
        // u != 0 forces v != 0 and v^{q-1} + 1 != 0.
        debug_assert!(!v.is_zero() && !denom.is_zero());
        let tau = field.inv(denom)?;
        Ok(OrbitSpec { u, v, tau })
    }

    pub fn base_point(&self) -> CurvePoint {
        CurvePoint::affine(self.u, self.v)
    }
}
