use super::AlgebraModule;
use crate::linalg::{kernel_basis, Rational, RationalMatrix, Subspace};

/// Radical and socle series of a module, with per-layer composition multiplicities.
#[derive(Clone, Debug)]
pub struct LoewyData {
    /// M = rad^0 ⊇ rad^1 ⊇ ... ⊇ 0.
    pub radical_series: Vec<Subspace>,
    /// 0 = soc^0 ⊆ soc^1 ⊆ ... ⊆ M.
    pub socle_series: Vec<Subspace>,
    /// Multiplicities of each simple in rad^k / rad^(k+1).
    pub radical_layers: Vec<Vec<usize>>,
    /// Multiplicities of each simple in soc^(k+1) / soc^k, listed from the socle up.
    pub socle_layers: Vec<Vec<usize>>,
    pub top: Vec<usize>,
    pub socle: Vec<usize>,
    pub composition_factors: Vec<usize>,
}

impl LoewyData {
    pub fn loewy_length(&self) -> usize {
        self.radical_layers.len()
    }
}

fn layer_counts(m: &AlgebraModule, big: &Subspace, small: &Subspace) -> Vec<usize> {
    let r = m.algebra().vertex_count();
    let mut c = vec![0; r];
    for &p in big.pivots() {
        c[m.vertex_of()[p]] += 1;
    }
    for &p in small.pivots() {
        c[m.vertex_of()[p]] -= 1;
    }
    c
}

/// {v : rad(A)·v ⊆ below}.
fn socle_above(m: &AlgebraModule, rad_actions: &[RationalMatrix], below: &Subspace) -> Subspace {
    let n = m.dim();
    let keep = below.complement_indices();
    // projection M → M / below in complement coordinates
    let proj = |v: &[Rational]| -> Vec<Rational> {
        let red = below.reduce(v);
        keep.iter().map(|&i| red[i].clone()).collect()
    };
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for act in rad_actions {
        let cols: Vec<Vec<Rational>> = (0..n).map(|c| proj(&act.column(c))).collect();
        let pm = RationalMatrix::from_columns(&cols, keep.len());
        rows.extend(pm.to_rows());
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    let mat = RationalMatrix::from_rows_shaped(rows, n);
    Subspace::span(n, kernel_basis(&mat))
}

pub fn loewy_data(m: &AlgebraModule) -> LoewyData {
    let n = m.dim();
    let mut radical_series = vec![Subspace::full(n)];
    loop {
        let next = m.radical_of(radical_series.last().unwrap());
        let done = next.dim() == 0;
        radical_series.push(next);
        if done {
            break;
        }
    }
    if n == 0 {
        radical_series.truncate(1);
    }
    let rad_actions: Vec<RationalMatrix> = m.algebra().radical_basis().iter().map(|r| m.action_of(r)).collect();
    let mut socle_series = vec![Subspace::zero(n)];
    while socle_series.last().unwrap().dim() < n {
        let next = socle_above(m, &rad_actions, socle_series.last().unwrap());
        assert!(next.dim() > socle_series.last().unwrap().dim(), "socle series stalled");
        socle_series.push(next);
    }
    let radical_layers: Vec<Vec<usize>> = radical_series.windows(2).map(|w| layer_counts(m, &w[0], &w[1])).collect();
    let socle_layers: Vec<Vec<usize>> = socle_series.windows(2).map(|w| layer_counts(m, &w[1], &w[0])).collect();
    let r = m.algebra().vertex_count();
    LoewyData {
        top: radical_layers.first().cloned().unwrap_or_else(|| vec![0; r]),
        socle: socle_layers.first().cloned().unwrap_or_else(|| vec![0; r]),
        composition_factors: m.dim_vector(),
        radical_series,
        socle_series,
        radical_layers,
        socle_layers,
    }
}

/// Radical and socle series coincide: rad^k M = soc^(L-k) M.
pub fn is_rigid(m: &AlgebraModule) -> bool {
    let d = loewy_data(m);
    let l = d.radical_layers.len();
    if d.socle_layers.len() != l {
        return false;
    }
    (0..=l).all(|k| d.radical_series[k] == d.socle_series[l - k])
}

/// Radical layers, top first, as `;`-separated rows of vertex labels, e.g. `0;1;0 2 0`.
pub fn render_loewy(m: &AlgebraModule) -> String {
    let labels = m.algebra().vertex_labels();
    let d = loewy_data(m);
    d.radical_layers
        .iter()
        .map(|layer| {
            let mut parts = Vec::new();
            for (v, &c) in layer.iter().enumerate() {
                for _ in 0..c {
                    parts.push(labels[v].clone());
                }
            }
            parts.join(" ")
        })
        .collect::<Vec<_>>()
        .join(";")
}
