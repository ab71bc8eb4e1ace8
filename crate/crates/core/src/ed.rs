//! Dense exact diagonalization of small Jaynes-Cummings-Hubbard chains.
//!
//! Each site carries a photon number `0..=n_max` and a two-level state
//! `s ∈ {0 (ground), 1 (excited)}`; the local index is `2·n + s`. Product
//! states are ordered lexicographically with site 0 most significant.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::{Error, ModelParams, Result};

/// Largest Hilbert space built densely.
pub const DENSE_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    /// Bonds `(i, i+1)`.
    Open,
    /// Bonds `(i, i+1 mod L)`; for two sites the single pair is counted twice.
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub n_sites: usize,
    pub n_max: usize,
    pub geometry: Geometry,
    pub params: ModelParams,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    pub energy: f64,
    /// `⟨N⟩ / n_sites` in the ground state.
    pub filling: f64,
    /// `|E(n_max) − E(n_max − 1)|`.
    pub cutoff_delta: f64,
    pub cutoff_converged: bool,
}

impl LatticeSpec {
    pub fn new(n_sites: usize, n_max: usize, geometry: Geometry, params: ModelParams) -> Result<Self> {
        let s = Self {
            n_sites,
            n_max,
            geometry,
            params,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(1..=3).contains(&self.n_sites) {
            return Err(Error::InvalidParams(format!("{} sites not in 1..=3", self.n_sites)));
        }
        if self.n_max > 8 {
            return Err(Error::InvalidParams(format!("photon cutoff {} above 8", self.n_max)));
        }
        let dim = self.dimension();
        if dim > DENSE_CAP {
            return Err(Error::TooLarge { dim, cap: DENSE_CAP });
        }
        Ok(())
    }

    pub fn local_dimension(&self) -> usize {
        2 * (self.n_max + 1)
    }

    pub fn dimension(&self) -> usize {
        self.local_dimension().pow(self.n_sites as u32)
    }

    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let l = self.n_sites;
        match self.geometry {
            Geometry::Open => (0..l.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Geometry::Periodic if l == 1 => Vec::new(),
            Geometry::Periodic => (0..l).map(|i| (i, (i + 1) % l)).collect(),
        }
    }

    fn local_states(&self, index: usize) -> Vec<usize> {
        let d = self.local_dimension();
        let mut out = vec![0; self.n_sites];
        let mut rest = index;
        for site in (0..self.n_sites).rev() {
            out[site] = rest % d;
            rest /= d;
        }
        out
    }

    fn index_of(&self, local: &[usize]) -> usize {
        let d = self.local_dimension();
        local.iter().fold(0, |acc, &x| acc * d + x)
    }
}

/// Total polariton number of every basis state.
pub fn polariton_numbers(spec: &LatticeSpec) -> Vec<usize> {
    (0..spec.dimension())
        .map(|i| spec.local_states(i).iter().map(|&x| x / 2 + x % 2).sum())
        .collect()
}

/// Grand-canonical Hamiltonian in the product basis.
pub fn build_hamiltonian(spec: &LatticeSpec) -> Result<DMatrix<f64>> {
    spec.validate()?;
    let p = &spec.params;
    let dim = spec.dimension();
    let bonds = spec.bonds();
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let local = spec.local_states(i);
        let mut diag = 0.0;
        for (site, &x) in local.iter().enumerate() {
            let (n, s) = (x / 2, x % 2);
            diag += p.omega_c * n as f64 + p.omega_x * s as f64 - p.mu * (n + s) as f64;
            // g (a σ⁺ + a† σ⁻): |n, 0⟩ → |n−1, 1⟩ with amplitude g√n.
            if s == 0 && n > 0 {
                let mut to = local.clone();
                to[site] = 2 * (n - 1) + 1;
                let j = spec.index_of(&to);
                let amp = p.g * (n as f64).sqrt();
                h[(j, i)] += amp;
                h[(i, j)] += amp;
            }
        }
        h[(i, i)] += diag;
        // −J (a_a† a_b + a_b† a_a) for every bond.
        for &(a, b) in &bonds {
            for (src, dst) in [(a, b), (b, a)] {
                let (ns, nd) = (local[src] / 2, local[dst] / 2);
                if ns == 0 || nd == spec.n_max {
                    continue;
                }
                let mut to = local.clone();
                to[src] -= 2;
                to[dst] += 2;
                let j = spec.index_of(&to);
                h[(j, i)] -= p.hopping * ((ns * (nd + 1)) as f64).sqrt();
            }
        }
    }
    Ok(h)
}

/// Polariton number, basis indices and eigensystem of one block.
type Block = (usize, Vec<usize>, SymmetricEigen<f64, nalgebra::Dyn>);

/// Eigen-decompositions of the fixed-polariton-number blocks.
fn blocks(spec: &LatticeSpec) -> Result<Vec<Block>> {
    let h = build_hamiltonian(spec)?;
    let numbers = polariton_numbers(spec);
    let n_top = numbers.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    for n in 0..=n_top {
        let idx: Vec<usize> = (0..numbers.len()).filter(|&i| numbers[i] == n).collect();
        if idx.is_empty() {
            continue;
        }
        let sub = DMatrix::from_fn(idx.len(), idx.len(), |r, c| h[(idx[r], idx[c])]);
        out.push((n, idx, SymmetricEigen::new(sub)));
    }
    Ok(out)
}

/// All eigenvalues in ascending order.
pub fn spectrum(spec: &LatticeSpec) -> Result<Vec<f64>> {
    let mut ev: Vec<f64> = blocks(spec)?
        .into_iter()
        .flat_map(|(_, _, e)| e.eigenvalues.iter().copied().collect::<Vec<_>>())
        .collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

fn lowest(spec: &LatticeSpec) -> Result<(f64, usize)> {
    let mut best = (f64::INFINITY, 0);
    for (n, _, e) in blocks(spec)? {
        let m = e.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if m < best.0 {
            best = (m, n);
        }
    }
    Ok(best)
}

/// Ground-state energy and filling, with a check of the photon cutoff.
///
/// Ground states are eigenstates of the total polariton number, so the
/// filling is that of the lowest block.
pub fn ground_state(spec: &LatticeSpec) -> Result<GroundState> {
    let (energy, n) = lowest(spec)?;
    let cutoff_delta = if spec.n_max == 0 {
        f64::INFINITY
    } else {
        let coarse = LatticeSpec {
            n_max: spec.n_max - 1,
            ..*spec
        };
        (lowest(&coarse)?.0 - energy).abs()
    };
    Ok(GroundState {
        energy,
        filling: n as f64 / spec.n_sites as f64,
        cutoff_delta,
        cutoff_converged: cutoff_delta <= 1e-8 * spec.params.g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jc_onsite::{jc_energy, lower_energy};
    use crate::Branch;

    fn params(mu: f64, j: f64) -> ModelParams {
        ModelParams::with_detuning(0.3, mu, j, 1).unwrap()
    }

    #[test]
    fn single_site_reproduces_jc_levels() {
        let spec = LatticeSpec::new(1, 4, Geometry::Open, params(-0.2, 0.0)).unwrap();
        let ev = spectrum(&spec).unwrap();
        let p = spec.params;
        let mut want = vec![0.0];
        for n in 1..=4 {
            want.push(jc_energy(n, Branch::Lower, &p).unwrap());
            want.push(jc_energy(n, Branch::Upper, &p).unwrap());
        }
        // The truncated top block holds only |n_max + 1 polaritons, e⟩.
        for w in want {
            assert!(ev.iter().any(|e| (e - w).abs() < 1e-12), "{w}");
        }
    }

    #[test]
    fn zero_hopping_factorizes() {
        let one = spectrum(&LatticeSpec::new(1, 3, Geometry::Open, params(-0.5, 0.0)).unwrap()).unwrap();
        let two = spectrum(&LatticeSpec::new(2, 3, Geometry::Open, params(-0.5, 0.0)).unwrap()).unwrap();
        let mut sums: Vec<f64> = one.iter().flat_map(|a| one.iter().map(move |b| a + b)).collect();
        sums.sort_by(|a, b| a.total_cmp(b));
        assert_eq!(sums.len(), two.len());
        for (a, b) in sums.iter().zip(&two) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn commutes_with_polariton_number() {
        let spec = LatticeSpec::new(2, 3, Geometry::Periodic, params(-0.5, 0.4)).unwrap();
        let h = build_hamiltonian(&spec).unwrap();
        let n = polariton_numbers(&spec);
        let mut worst: f64 = 0.0;
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                worst = worst.max((h[(i, j)] * (n[j] as f64 - n[i] as f64)).abs());
            }
        }
        assert!(worst < 1e-12);
        assert_eq!(h, h.transpose());
    }

    #[test]
    fn atomic_ground_state() {
        let p = params(-0.5, 0.0);
        let g = ground_state(&LatticeSpec::new(2, 4, Geometry::Open, p).unwrap()).unwrap();
        let emin = (0..5).map(|n| lower_energy(n, &p)).fold(f64::INFINITY, f64::min);
        assert!((g.energy - 2.0 * emin).abs() < 1e-12);
    }

    #[test]
    fn mott_plateau() {
        let p = ModelParams::with_detuning(0.0, -0.7, 0.01, 1).unwrap();
        let g = ground_state(&LatticeSpec::new(2, 5, Geometry::Periodic, p).unwrap()).unwrap();
        assert!((g.filling - 1.0).abs() < 1e-3);
        assert!(g.cutoff_converged);
    }

    #[test]
    fn size_cap() {
        let r = LatticeSpec::new(3, 8, Geometry::Open, params(0.0, 0.0));
        assert!(matches!(r, Err(Error::TooLarge { .. })));
    }
}
