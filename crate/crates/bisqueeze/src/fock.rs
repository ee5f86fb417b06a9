//! Independent truncated Fock-space simulator for the three-mode system.
//!
//! Used only as a brute-force cross-check of the Gaussian pipeline, never as
//! part of it. The generator `R_ab(a†b† + ab) + R_bc(b†c† + bc)` conserves
//! `n_a − n_b + n_c`, so its exponential splits into small dense blocks over
//! the sectors of that quantity; each block is exponentiated through its
//! real-symmetric eigendecomposition. The vacuum lives in the zero sector.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::generation::PumpParameters;
use crate::{Error, Result};

/// Three-mode Fock space truncated at `n_max` photons per mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedSpace {
    n_max: usize,
    norm_loss_bound: f64,
}

impl TruncatedSpace {
    pub const DEFAULT_N_MAX: usize = 12;
    /// Largest tolerated probability weight on the truncation boundary of an
    /// evolved state.
    pub const DEFAULT_NORM_LOSS_BOUND: f64 = 1e-5;

    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidParameter(
                "need at least two Fock levels per mode".into(),
            ));
        }
        Ok(Self {
            n_max,
            norm_loss_bound: Self::DEFAULT_NORM_LOSS_BOUND,
        })
    }

    pub fn with_norm_loss_bound(mut self, bound: f64) -> Self {
        self.norm_loss_bound = bound;
        self
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn norm_loss_bound(&self) -> f64 {
        self.norm_loss_bound
    }

    /// Total dimension `(n_max + 1)³`.
    pub fn dim(&self) -> usize {
        (self.n_max + 1).pow(3)
    }

    fn index(&self, na: usize, nb: usize, nc: usize) -> usize {
        let d = self.n_max + 1;
        (na * d + nb) * d + nc
    }

    fn occupations(&self, idx: usize) -> (usize, usize, usize) {
        let d = self.n_max + 1;
        (idx / (d * d), (idx / d) % d, idx % d)
    }
}

impl Default for TruncatedSpace {
    fn default() -> Self {
        Self::new(Self::DEFAULT_N_MAX).expect("default cutoff is valid")
    }
}

/// A pure state on the truncated space.
#[derive(Clone, Debug)]
pub struct FockState {
    space: TruncatedSpace,
    amplitudes: DVector<C64>,
}

impl FockState {
    pub fn vacuum(space: TruncatedSpace) -> Self {
        let mut amplitudes = DVector::zeros(space.dim());
        amplitudes[space.index(0, 0, 0)] = C64::ONE;
        Self { space, amplitudes }
    }

    pub fn space(&self) -> &TruncatedSpace {
        &self.space
    }

    pub fn amplitude(&self, na: usize, nb: usize, nc: usize) -> C64 {
        self.amplitudes[self.space.index(na, nb, nc)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Probability weight on the truncation boundary (any mode at `n_max`);
    /// the proxy for how much the cutoff distorts the evolved state.
    pub fn boundary_weight(&self) -> f64 {
        let n_max = self.space.n_max;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(idx, _)| {
                let (na, nb, nc) = self.space.occupations(*idx);
                na == n_max || nb == n_max || nc == n_max
            })
            .map(|(_, amp)| amp.norm_sqr())
            .sum()
    }
}

/// One conserved-quantity sector: the basis indices it spans and the dense
/// unitary block acting on them.
struct SectorBlock {
    indices: Vec<usize>,
    unitary: DMatrix<C64>,
}

/// Block-diagonal unitary `exp(i·[R_ab·G_ab + R_bc·G_bc])` on the truncated
/// space.
pub struct TruncatedUnitary {
    space: TruncatedSpace,
    sectors: Vec<SectorBlock>,
}

impl TruncatedUnitary {
    pub fn space(&self) -> &TruncatedSpace {
        &self.space
    }

    pub fn apply(&self, state: &FockState) -> Result<FockState> {
        if state.space != self.space {
            return Err(Error::InvalidParameter(
                "state and unitary live on different truncated spaces".into(),
            ));
        }
        let mut out = DVector::<C64>::zeros(self.space.dim());
        for sector in &self.sectors {
            let sub = DVector::from_iterator(
                sector.indices.len(),
                sector.indices.iter().map(|&i| state.amplitudes[i]),
            );
            let moved = &sector.unitary * sub;
            for (local, &global) in sector.indices.iter().enumerate() {
                out[global] = moved[local];
            }
        }
        Ok(FockState {
            space: self.space,
            amplitudes: out,
        })
    }

    pub fn apply_to_vacuum(&self) -> FockState {
        self.apply(&FockState::vacuum(self.space))
            .expect("vacuum lives on the same space")
    }

    /// Largest `‖U_k† U_k − 𝟙‖_∞` over the sector blocks.
    pub fn unitarity_defect(&self) -> f64 {
        self.sectors
            .iter()
            .map(|s| {
                let n = s.indices.len();
                (s.unitary.adjoint() * &s.unitary - DMatrix::<C64>::identity(n, n)).camax()
            })
            .fold(0.0, f64::max)
    }

    /// Assembles the full dense matrix (zero between sectors).
    pub fn to_dense(&self) -> DMatrix<C64> {
        let d = self.space.dim();
        let mut m = DMatrix::<C64>::zeros(d, d);
        for sector in &self.sectors {
            for (lj, &gj) in sector.indices.iter().enumerate() {
                for (li, &gi) in sector.indices.iter().enumerate() {
                    m[(gi, gj)] = sector.unitary[(li, lj)];
                }
            }
        }
        m
    }
}

/// Builds `exp(i·[R_ab·G_ab + R_bc·G_bc])` with
/// `G_ab = a†b† + ab`, `G_bc = b†c† + bc`.
///
/// Rejected when the predicted occupations leave too little headroom below
/// the cutoff: the bound `2·sinh²ρ + sinh⁴ρ < n_max/4` caps the expected
/// idler occupation by a factor of a quarter of the cutoff.
pub fn build_unitary(p: &PumpParameters, space: &TruncatedSpace) -> Result<TruncatedUnitary> {
    let rho = p.r_ab.hypot(p.r_bc);
    let occupancy_cap = 2.0 * rho.sinh().powi(2) + rho.sinh().powi(4);
    if occupancy_cap >= space.n_max as f64 / 4.0 {
        return Err(Error::Truncation(format!(
            "predicted occupation bound {occupancy_cap:.2} exceeds n_max/4 = {:.2}; raise n_max or lower the pumps",
            space.n_max as f64 / 4.0
        )));
    }

    let n_max = space.n_max;
    let d1 = n_max + 1;
    // bucket basis states by the conserved n_a − n_b + n_c
    let mut sectors_by_k: Vec<Vec<usize>> = vec![Vec::new(); 3 * n_max + 1];
    for na in 0..d1 {
        for nb in 0..d1 {
            for nc in 0..d1 {
                let k = (na + nc + n_max) - nb; // shifted to be non-negative
                sectors_by_k[k].push(space.index(na, nb, nc));
            }
        }
    }

    let mut sectors = Vec::new();
    for indices in sectors_by_k.into_iter().filter(|s| !s.is_empty()) {
        let n = indices.len();
        let mut local = std::collections::HashMap::with_capacity(n);
        for (li, &gi) in indices.iter().enumerate() {
            local.insert(gi, li);
        }
        // real symmetric generator block
        let mut gen = DMatrix::<f64>::zeros(n, n);
        for (li, &gi) in indices.iter().enumerate() {
            let (na, nb, nc) = space.occupations(gi);
            if na < n_max && nb < n_max {
                let gj = space.index(na + 1, nb + 1, nc);
                let lj = local[&gj];
                let v = p.r_ab * (((na + 1) * (nb + 1)) as f64).sqrt();
                gen[(lj, li)] += v;
                gen[(li, lj)] += v;
            }
            if nb < n_max && nc < n_max {
                let gj = space.index(na, nb + 1, nc + 1);
                let lj = local[&gj];
                let v = p.r_bc * (((nb + 1) * (nc + 1)) as f64).sqrt();
                gen[(lj, li)] += v;
                gen[(li, lj)] += v;
            }
        }
        let eig = SymmetricEigen::new(gen);
        let phases = DMatrix::<C64>::from_diagonal(
            &eig.eigenvalues.map(|lambda| C64::from_polar(1.0, lambda)),
        );
        let vectors = eig.eigenvectors.map(|x| C64::new(x, 0.0));
        let unitary = &vectors * phases * vectors.transpose();
        sectors.push(SectorBlock { indices, unitary });
    }

    Ok(TruncatedUnitary {
        space: *space,
        sectors,
    })
}

/// Evolves the vacuum and enforces the norm-loss bound on the boundary
/// weight.
pub fn evolve_vacuum(p: &PumpParameters, space: &TruncatedSpace) -> Result<FockState> {
    let state = build_unitary(p, space)?.apply_to_vacuum();
    let loss = state.boundary_weight();
    if loss > space.norm_loss_bound {
        return Err(Error::Truncation(format!(
            "boundary weight {loss:.3e} exceeds the norm-loss bound {:.3e}",
            space.norm_loss_bound
        )));
    }
    Ok(state)
}

/// Brute-force expectation values of an evolved state.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleExpectations {
    /// Mean photon numbers `(⟨n_a⟩, ⟨n_b⟩, ⟨n_c⟩)`.
    pub occupations: [f64; 3],
    /// Pair coherence `⟨a†c⟩` between the outer modes.
    pub pair_coherence_ac: C64,
    /// Von Neumann entropies of the single-mode reductions, in nats.
    pub entropies: [f64; 3],
}

/// Direct operator expectation values on a normalized state.
pub fn oracle_expectations(state: &FockState) -> Result<OracleExpectations> {
    if (state.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "state is not normalized (norm {})",
            state.norm()
        )));
    }
    let space = state.space;
    let n_max = space.n_max;
    let d1 = n_max + 1;

    let mut occupations = [0.0; 3];
    for (idx, amp) in state.amplitudes.iter().enumerate() {
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let (na, nb, nc) = space.occupations(idx);
        occupations[0] += p * na as f64;
        occupations[1] += p * nb as f64;
        occupations[2] += p * nc as f64;
    }

    // ⟨a†c⟩: a†c |na, nb, nc⟩ = √((na+1)·nc) |na+1, nb, nc−1⟩
    let mut pair = C64::ZERO;
    for na in 0..n_max {
        for nb in 0..d1 {
            for nc in 1..d1 {
                let shifted = state.amplitudes[space.index(na + 1, nb, nc - 1)];
                let base = state.amplitudes[space.index(na, nb, nc)];
                pair += shifted.conj() * base * (((na + 1) * nc) as f64).sqrt();
            }
        }
    }

    let mut entropies = [0.0; 3];
    for (mode, entry) in entropies.iter_mut().enumerate() {
        *entry = single_mode_entropy(state, mode);
    }

    Ok(OracleExpectations {
        occupations,
        pair_coherence_ac: pair,
        entropies,
    })
}

/// Entropy of one mode's reduced density matrix, `−Σ λ ln λ`.
fn single_mode_entropy(state: &FockState, mode: usize) -> f64 {
    let space = state.space;
    let d1 = space.n_max + 1;
    let mut rho = DMatrix::<C64>::zeros(d1, d1);
    for p in 0..d1 {
        for q in 0..=p {
            let mut acc = C64::ZERO;
            for x in 0..d1 {
                for y in 0..d1 {
                    let (ip, iq) = match mode {
                        0 => (space.index(p, x, y), space.index(q, x, y)),
                        1 => (space.index(x, p, y), space.index(x, q, y)),
                        _ => (space.index(x, y, p), space.index(x, y, q)),
                    };
                    acc += state.amplitudes[ip] * state.amplitudes[iq].conj();
                }
            }
            rho[(p, q)] = acc;
            rho[(q, p)] = acc.conj();
        }
    }
    SymmetricEigen::new(rho)
        .eigenvalues
        .iter()
        .map(|&lambda| {
            if lambda > 1e-18 {
                -lambda * lambda.ln()
            } else {
                0.0
            }
        })
        .sum()
}
