//! The evaluation code C_L(D, G): generator matrix, encoding and the
//! cyclicity certificate.
//!
//! Column j of the generator matrix is the orbit point Q_{j+1}, so the
//! action of ω ∈ Γ is the coordinate shift c ↦ (c₂, …, c_n, c₁).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, HermitianCurve, OrbitSpec};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{self, Matrix};
use crate::rrspace::{self, RrFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<FieldElement>,
    pub weight: usize,
}

impl Codeword {
    pub fn new(symbols: Vec<FieldElement>) -> Codeword {
        let weight = symbols.iter().filter(|s| !s.is_zero()).count();
        Codeword { symbols, weight }
    }

    /// (c₂, …, c_n, c₁).
    pub fn shifted(&self) -> Codeword {
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(1);
        Codeword {
            symbols,
            weight: self.weight,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<Field>,
    m: usize,
    spec: OrbitSpec,
    orbit: Vec<CurvePoint>,
    basis: Vec<RrFunction>,
    gen: Matrix,
}

/// One-step cyclic shift of every row.
pub fn shift_rows(rows: &[Vec<FieldElement>]) -> Matrix {
    rows.iter()
        .map(|r| {
            let mut s = r.clone();
            s.rotate_left(1);
            s
        })
        .collect()
}

/// True iff the row space of `rows` is closed under the cyclic shift.
pub fn is_shift_closed(field: &Field, rows: &[Vec<FieldElement>]) -> bool {
    let r = linalg::rank(field, rows);
    let mut stacked = rows.to_vec();
    stacked.extend(shift_rows(rows));
    linalg::rank(field, &stacked) == r
}

impl LinearCode {
    /// Evaluates the L(G) basis on the Γ-orbit of `spec` and checks that the
    /// evaluation map is injective.
    pub fn build(curve: &HermitianCurve, m: usize, spec: OrbitSpec) -> Result<LinearCode> {
        let field = curve.field().clone();
        let q = field.q();
        let basis = rrspace::basis(q, m)?;
        OrbitSpec::new(&field, spec.u, spec.v)?;
        let orbit = curve.orbit_of(&spec);
        let gen: Matrix = basis
            .iter()
            .map(|f| {
                orbit
                    .iter()
                    .map(|pt| f.evaluate(&field, pt))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let rank = linalg::rank(&field, &gen);
        if rank != basis.len() {
            return Err(Error::RankDeficient {
                q,
                m,
                rank,
                expected: basis.len(),
            });
        }
        Ok(LinearCode {
            field,
            m,
            spec,
            orbit,
            basis,
            gen,
        })
    }

    /// The code on the canonical base point.
    pub fn canonical(q: u32, m: usize) -> Result<LinearCode> {
        let curve = HermitianCurve::with_q(q)?;
        let spec = curve.canonical_orbit_spec();
        LinearCode::build(&curve, m, spec)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.orbit.len()
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn spec(&self) -> &OrbitSpec {
        &self.spec
    }

    pub fn orbit(&self) -> &[CurvePoint] {
        &self.orbit
    }

    pub fn basis(&self) -> &[RrFunction] {
        &self.basis
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// Goppa bound n − deg G.
    pub fn designed_distance(&self) -> usize {
        self.n() - self.m * (self.q() as usize - 1)
    }

    pub fn encode(&self, msg: &[FieldElement]) -> Result<Codeword> {
        if msg.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: msg.len(),
            });
        }
        Ok(Codeword::new(linalg::vec_mul(&self.field, msg, &self.gen)))
    }

    /// Codeword of an arbitrary function of L(G).
    pub fn evaluate(&self, f: &RrFunction) -> Result<Codeword> {
        if f.m != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                got: f.m,
            });
        }
        self.encode(&f.coordinates())
    }

    /// Row-space closure under the shift, certified by rank.
    pub fn check_cyclic(&self) -> bool {
        is_shift_closed(&self.field, &self.gen)
    }

    /// The k×k matrix S with shift(gen) = S · gen, so that
    /// shift(encode(a)) = encode(a · S).
    pub fn shift_matrix(&self) -> Option<Matrix> {
        shift_rows(&self.gen)
            .iter()
            .map(|row| linalg::solve_in_row_space(&self.field, &self.gen, row))
            .collect()
    }

    pub fn export(&self) -> GeneratorExport {
        let f = &*self.field;
        GeneratorExport {
            q: f.q(),
            p: f.p(),
            k_ext: f.k(),
            m: self.m,
            n: self.n(),
            k: self.k(),
            irreducible: f.irreducible().to_vec(),
            omega: f.omega().enc(),
            base_point: [self.spec.u.enc(), self.spec.v.enc()],
            tau: self.spec.tau.enc(),
            rows: self
                .gen
                .iter()
                .map(|r| r.iter().map(|x| x.enc()).collect())
                .collect(),
        }
    }
}

/// Self-describing generator-matrix file; every element is its encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorExport {
    pub q: u32,
    pub p: u32,
    pub k_ext: u32,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub irreducible: Vec<u32>,
    pub omega: u32,
    pub base_point: [u32; 2],
    pub tau: u32,
    pub rows: Vec<Vec<u32>>,
}

impl GeneratorExport {
    pub fn to_csv(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u32::to_string).collect();
                cells.join(",") + "\n"
            })
            .collect()
    }
}
