//! Quasi-hereditary structures: standard and costandard modules, heredity chains, the
//! strongly/ultra flags, characteristic tilting modules and the Ringel duality certificate.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::FiniteDimAlgebra;
use crate::endo::{build_er, endomorphism_algebra, right_multiplications, EndoAlgebra};
use crate::error::{Error, Result};
use crate::ideals::{ensure_monomial, is_ideally_ordered, iso_classes, minimal_left_approximation, MonomialIdeal};
use crate::linalg::{solve_linear, zero_vec, Rational, RationalMatrix, Subspace};
use crate::modules::{
    ext1, is_indecomposable, is_isomorphic, is_projective, projective_dimension, projective_module, regular_module,
    AlgebraModule, ModuleMap,
};

/// A total preorder on the simples: i < j iff layer(i) < layer(j); equal layers are incomparable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerOrder {
    pub layers: Vec<usize>,
}

impl LayerOrder {
    pub fn new(layers: Vec<usize>) -> Self {
        LayerOrder { layers }
    }

    /// A total order listed from the smallest element up.
    pub fn from_sequence(seq: &[usize]) -> Self {
        let mut layers = vec![0; seq.len()];
        for (pos, &v) in seq.iter().enumerate() {
            layers[v] = pos;
        }
        LayerOrder { layers }
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.layers[i] < self.layers[j]
    }

    /// j is not ≤ i.
    fn kills(&self, i: usize, j: usize) -> bool {
        j != i && self.layers[j] >= self.layers[i]
    }

    /// Blocks of equal layer, from the top layer down.
    pub fn blocks_descending(&self) -> Vec<Vec<usize>> {
        let mut values: Vec<usize> = self.layers.clone();
        values.sort_unstable();
        values.dedup();
        values.into_iter().rev().map(|l| (0..self.len()).filter(|&v| self.layers[v] == l).collect()).collect()
    }
}

/// Δ_i = P_i / U_i with U_i generated by e_j P_i over j not ≤ i.
#[derive(Clone, Debug)]
pub struct Standard {
    pub projective: AlgebraModule,
    pub trace: Subspace,
    pub module: AlgebraModule,
    pub projection: ModuleMap,
}

pub fn standard_module(a: &Arc<FiniteDimAlgebra>, order: &LayerOrder, i: usize) -> Result<Standard> {
    if order.len() != a.vertex_count() {
        return Err(Error::Input("order does not cover all simples".into()));
    }
    let p = projective_module(a, i)?;
    let gens: Vec<Vec<Rational>> = (0..p.dim())
        .filter(|&k| order.kills(i, p.vertex_of()[k]))
        .map(|k| crate::linalg::unit_vec(p.dim(), k))
        .collect();
    let trace = p.span_closure(&gens);
    let (module, projection) = p.quotient_by(&trace, format!("Δ{}", a.vertex_labels()[i]));
    Ok(Standard { projective: p, trace, module, projection })
}

pub fn standard_modules(a: &Arc<FiniteDimAlgebra>, order: &LayerOrder) -> Result<Vec<AlgebraModule>> {
    (0..a.vertex_count()).map(|i| Ok(standard_module(a, order, i)?.module)).collect()
}

/// ∇_i = D(Δ_i over A^op).
pub fn costandard_modules(
    a: &Arc<FiniteDimAlgebra>,
    op: &Arc<FiniteDimAlgebra>,
    order: &LayerOrder,
) -> Result<Vec<AlgebraModule>> {
    (0..a.vertex_count())
        .map(|i| {
            let d = standard_module(op, order, i)?.module.dualize(a)?;
            Ok(d.with_label(format!("∇{}", a.vertex_labels()[i])))
        })
        .collect()
}

/// Span of A e A for e the sum of the idempotents in `block`.
fn idempotent_ideal(b: &FiniteDimAlgebra, block: &[usize]) -> Vec<Vec<Rational>> {
    let n = b.dim();
    let mut out = Vec::new();
    for x in 0..n {
        if !block.contains(&b.basis()[x].source) {
            continue;
        }
        for y in b.basis_with_target(b.basis()[x].source) {
            let p = b.product(x, y);
            if !p.is_empty() {
                let mut v = zero_vec(n);
                for (k, c) in p {
                    v[*k] = c.clone();
                }
                out.push(v);
            }
        }
    }
    Subspace::span(n, out).basis().to_vec()
}

/// One heredity-chain step: e B e semisimple and BeB projective as a left module.
fn heredity_step(b: &Arc<FiniteDimAlgebra>, block: &[usize]) -> std::result::Result<(), String> {
    for &k in block {
        for &l in block {
            let d = b.block(k, l).len();
            if d != usize::from(k == l) {
                return Err(format!(
                    "dim e_{} B e_{} = {d} in the block of {}",
                    b.vertex_labels()[k],
                    b.vertex_labels()[l],
                    block.iter().map(|&v| b.vertex_labels()[v].as_str()).collect::<Vec<_>>().join(",")
                ));
            }
        }
    }
    let ideal = idempotent_ideal(b, block);
    let reg = regular_module(b);
    let (m, _) = reg.submodule_on(&Subspace::span(b.dim(), ideal), "BeB");
    if !is_projective(&m) {
        return Err(format!(
            "the ideal generated by {} is not projective",
            block.iter().map(|&v| b.vertex_labels()[v].as_str()).collect::<Vec<_>>().join(",")
        ));
    }
    Ok(())
}

/// A / A e_S A, with the surviving original vertices.
fn peel(a: &FiniteDimAlgebra, set: &[usize]) -> (Arc<FiniteDimAlgebra>, Vec<usize>) {
    if set.is_empty() {
        return (Arc::new(a.clone()), (0..a.vertex_count()).collect());
    }
    let (q, alive) = a.quotient(&idempotent_ideal(a, set));
    (Arc::new(q), alive)
}

#[derive(Clone, Debug, Serialize)]
pub struct HeredityChain {
    /// Blocks peeled, from the top layer down (original vertex indices).
    pub blocks: Vec<Vec<usize>>,
    pub ok: bool,
    pub failure: Option<String>,
}

pub fn heredity_chain(a: &Arc<FiniteDimAlgebra>, order: &LayerOrder) -> Result<HeredityChain> {
    if order.len() != a.vertex_count() {
        return Err(Error::Input("order does not cover all simples".into()));
    }
    let mut peeled: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();
    for block in order.blocks_descending() {
        let (b, alive) = peel(a, &peeled);
        let local: Vec<usize> =
            block.iter().map(|v| alive.iter().position(|w| w == v).expect("unpeeled vertex survives")).collect();
        if let Err(msg) = heredity_step(&b, &local) {
            return Ok(HeredityChain { blocks, ok: false, failure: Some(msg) });
        }
        peeled.extend(&block);
        blocks.push(block);
    }
    Ok(HeredityChain { blocks, ok: true, failure: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QhFlags {
    pub left_strongly: bool,
    pub right_strongly: bool,
    pub left_ultra: bool,
}

#[derive(Clone, Debug)]
pub struct QhData {
    pub algebra: Arc<FiniteDimAlgebra>,
    pub opposite: Arc<FiniteDimAlgebra>,
    pub order: LayerOrder,
    pub standards: Vec<AlgebraModule>,
    /// Standard modules of A^op for the same order.
    pub op_standards: Vec<AlgebraModule>,
    pub costandards: Vec<AlgebraModule>,
    pub chain: HeredityChain,
    pub is_qh: bool,
    pub flags: Option<QhFlags>,
}

/// Standards, costandards, the heredity chain, and (when quasi-hereditary) the flags.
pub fn analyze(a: &Arc<FiniteDimAlgebra>, order: &LayerOrder) -> Result<QhData> {
    let op = Arc::new(a.opposite());
    let standards = standard_modules(a, order)?;
    let op_standards = standard_modules(&op, order)?;
    let costandards = op_standards
        .iter()
        .enumerate()
        .map(|(i, d)| Ok(d.dualize(a)?.with_label(format!("∇{}", a.vertex_labels()[i]))))
        .collect::<Result<Vec<_>>>()?;
    let chain = heredity_chain(a, order)?;
    let diagonal_ok = standards.iter().enumerate().all(|(i, d)| d.dim_vector()[i] == 1);
    let is_qh = chain.ok && diagonal_ok;
    let mut data = QhData {
        algebra: a.clone(),
        opposite: op,
        order: order.clone(),
        standards,
        op_standards,
        costandards,
        chain,
        is_qh,
        flags: None,
    };
    if is_qh {
        data.flags = Some(strongly_flags(&data)?);
    }
    Ok(data)
}

pub fn strongly_flags(qh: &QhData) -> Result<QhFlags> {
    if !qh.is_qh {
        return Err(Error::Input("flags require a quasi-hereditary order".into()));
    }
    let left_strongly = qh.standards.iter().all(|d| projective_dimension(d, 1).is_some());
    let right_strongly = qh.op_standards.iter().all(|d| projective_dimension(d, 1).is_some());
    let mut left_ultra = true;
    for (i, n) in qh.costandards.iter().enumerate() {
        if n.dim() == 1 && !is_costandard_filtered(&projective_module(&qh.algebra, i)?, qh)? {
            left_ultra = false;
        }
    }
    Ok(QhFlags { left_strongly, right_strongly, left_ultra })
}

fn require_qh(qh: &QhData) -> Result<()> {
    if qh.is_qh {
        Ok(())
    } else {
        Err(Error::Input("filtration tests need a quasi-hereditary order".into()))
    }
}

/// Ext¹(Δ_j, X) = 0 for all j.
pub fn is_costandard_filtered(x: &AlgebraModule, qh: &QhData) -> Result<bool> {
    require_qh(qh)?;
    for d in &qh.standards {
        if ext1(d, x)?.dim > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ext¹(X, ∇_j) = 0 for all j.
pub fn is_standard_filtered(x: &AlgebraModule, qh: &QhData) -> Result<bool> {
    require_qh(qh)?;
    for n in &qh.costandards {
        if ext1(x, n)?.dim > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Δ-filtration by peeling: the submodule generated by e_i X for i of top layer must be a
/// direct sum of copies of Δ_i, and the quotient is treated recursively.
pub fn peel_standard_filtration(x: &AlgebraModule, standards: &[AlgebraModule], order: &LayerOrder) -> bool {
    if x.is_zero() {
        return true;
    }
    let dv = x.dim_vector();
    let top = (0..dv.len()).filter(|&i| dv[i] > 0).max_by_key(|&i| (order.layers[i], std::cmp::Reverse(i))).unwrap();
    let gens: Vec<Vec<Rational>> =
        x.vertex_indices(top).into_iter().map(|k| crate::linalg::unit_vec(x.dim(), k)).collect();
    let sub = x.span_closure(&gens);
    let (u, _) = x.submodule_on(&sub, "U");
    let m = dv[top];
    let ud = u.dim_vector();
    let expected: Vec<usize> = standards[top].dim_vector().iter().map(|c| c * m).collect();
    if ud != expected {
        return false;
    }
    let (rest, _) = x.quotient_by(&sub, "X/U");
    peel_standard_filtration(&rest, standards, order)
}

/// ∇-filtration by peeling the dual over A^op.
pub fn peel_costandard_filtration(x: &AlgebraModule, qh: &QhData) -> Result<bool> {
    let d = x.dualize(&qh.opposite)?;
    Ok(peel_standard_filtration(&d, &qh.op_standards, &qh.order))
}

/// Layer of each E_R summand, as an order.
pub fn ideal_layer_order(er: &EndoAlgebra) -> Result<LayerOrder> {
    er.layers.clone().map(LayerOrder::new).ok_or_else(|| Error::Input("not an E_R algebra".into()))
}

/// Total orders grouped by the standard modules they induce.
#[derive(Clone, Debug)]
pub struct QhStructure {
    /// Orders listed from the smallest element up.
    pub orders: Vec<Vec<usize>>,
    pub standard_dims: Vec<usize>,
    traces: Vec<Subspace>,
}

impl QhStructure {
    pub fn contains_order(&self, seq: &[usize]) -> bool {
        self.orders.iter().any(|o| o == seq)
    }
}

/// All total orders admitting a heredity chain, grouped by induced standard modules.
pub fn brute_force_qh_orders(a: &Arc<FiniteDimAlgebra>) -> Result<Vec<QhStructure>> {
    let n = a.vertex_count();
    if n > 8 {
        return Err(Error::Unsupported(format!("{n} simples exceed the brute-force limit of 8")));
    }
    // quotients by A e_S A depend only on the set S, so steps are memoized on bitmasks
    let mut quotients: HashMap<u32, (Arc<FiniteDimAlgebra>, Vec<usize>)> = HashMap::new();
    let mut step_ok: HashMap<(u32, usize), bool> = HashMap::new();
    let mut top_down: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(u32, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((mask, seq)) = stack.pop() {
        if seq.len() == n {
            top_down.push(seq);
            continue;
        }
        for v in (0..n).rev() {
            if mask & (1 << v) != 0 {
                continue;
            }
            let ok = match step_ok.get(&(mask, v)) {
                Some(&ok) => ok,
                None => {
                    let (b, alive) = quotients
                        .entry(mask)
                        .or_insert_with(|| {
                            let set: Vec<usize> = (0..n).filter(|&w| mask & (1 << w) != 0).collect();
                            peel(a, &set)
                        })
                        .clone();
                    let local = alive.iter().position(|&w| w == v).expect("vertex survives");
                    let ok = heredity_step(&b, &[local]).is_ok();
                    step_ok.insert((mask, v), ok);
                    ok
                }
            };
            if ok {
                let mut s = seq.clone();
                s.push(v);
                stack.push((mask | (1 << v), s));
            }
        }
    }
    let mut groups: Vec<QhStructure> = Vec::new();
    top_down.sort();
    for mut seq in top_down {
        seq.reverse();
        let order = LayerOrder::from_sequence(&seq);
        let stds = (0..n).map(|i| standard_module(a, &order, i)).collect::<Result<Vec<_>>>()?;
        if stds.iter().enumerate().any(|(i, s)| s.module.dim_vector()[i] != 1) {
            continue;
        }
        let traces: Vec<Subspace> = stds.iter().map(|s| s.trace.clone()).collect();
        match groups.iter_mut().find(|g| g.traces == traces) {
            Some(g) => g.orders.push(seq),
            None => groups.push(QhStructure {
                orders: vec![seq],
                standard_dims: stds.iter().map(|s| s.module.dim()).collect(),
                traces,
            }),
        }
    }
    Ok(groups)
}

/// 0 → P(target of α_Γ) → P(Γ) → Δ(Γ) → 0 is exact for every summand Γ of E_R.
pub fn standard_ses_check(er: &EndoAlgebra, qh: &QhData) -> Result<bool> {
    let ideals = er.ideals.as_ref().ok_or_else(|| Error::Input("not an E_R algebra".into()))?;
    let e = &er.algebra;
    for (g, ideal) in ideals.iter().enumerate() {
        let approx = minimal_left_approximation(ideal)?;
        let std = standard_module(e, &qh.order, g)?;
        let pg = &std.projective;
        let pg_index = e.basis_with_source(g);
        // image of ⊕ P_X → P_Γ, x ↦ x·α_X
        let mut image = Vec::new();
        let mut source_dim = 0;
        let mut row = 0;
        for t in &approx.targets {
            let k = ideals.iter().position(|c| c.is_isomorphic_to(t)).expect("target is a class");
            let block = approx
                .map
                .matrix
                .submatrix(&(row..row + t.dim()).collect::<Vec<_>>(), &(0..ideal.dim()).collect::<Vec<_>>());
            row += t.dim();
            let alpha = er
                .element_of_map(g, k, &block)
                .ok_or_else(|| Error::TheoremViolation("approximation component is not a homomorphism".into()))?;
            for b in e.basis_with_source(k) {
                let v = e.mul(&e.basis_vector(b), &alpha);
                image.push(pg_index.iter().map(|&c| v[c].clone()).collect::<Vec<_>>());
                source_dim += 1;
            }
        }
        let im = Subspace::span(pg.dim(), image);
        if im.dim() != source_dim || im != std.trace {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Socle of E e_0 only has composition factors S_i for i in e_0.
pub fn socle_of_e0_is_isotypic(er: &EndoAlgebra) -> Result<bool> {
    for &i in &er.e0 {
        let p = projective_module(&er.algebra, i)?;
        let d = crate::modules::loewy_data(&p);
        if d.socle.iter().enumerate().any(|(j, &c)| c > 0 && !er.e0.contains(&j)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [P_j : S_i] = Σ_k [Δ_k : S_i][∇_k : S_j].
pub fn bgg_reciprocity_holds(qh: &QhData) -> bool {
    let c = qh.algebra.cartan_matrix();
    let n = c.len();
    let d: Vec<Vec<usize>> = qh.standards.iter().map(AlgebraModule::dim_vector).collect();
    let e: Vec<Vec<usize>> = qh.costandards.iter().map(AlgebraModule::dim_vector).collect();
    (0..n).all(|i| (0..n).all(|j| c[i][j] == (0..n).map(|k| d[k][i] * e[k][j]).sum::<usize>()))
}

/// T_U = E·ρ_u ⊆ P_i, with witnesses: the inclusion into P_i and the surjection P_j → T_U,
/// a ↦ a·ρ_u, for ρ_u ∈ e_j E e_i.
#[derive(Clone, Debug)]
pub struct TiltingSummand {
    pub ideal: MonomialIdeal,
    pub generator: Vec<Rational>,
    pub module: AlgebraModule,
    pub sub_vertex: usize,
    pub inclusion: ModuleMap,
    pub quotient_vertex: usize,
    pub quotient: ModuleMap,
    span: Subspace,
}

#[derive(Clone, Debug)]
pub struct TiltingModule {
    pub r_op: Arc<FiniteDimAlgebra>,
    pub summands: Vec<TiltingSummand>,
}

impl TiltingModule {
    pub fn modules(&self) -> Vec<AlgebraModule> {
        self.summands.iter().map(|t| t.module.clone()).collect()
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}

/// Characteristic tilting module of E_R, one summand per ideal class U of R^op, with every
/// claimed property re-derived.
pub fn characteristic_tilting(er: &EndoAlgebra, r: &Arc<FiniteDimAlgebra>, qh: &QhData) -> Result<TiltingModule> {
    ensure_monomial(r)?;
    if !qh.is_qh {
        return Err(violation("E_R is not quasi-hereditary for the ideal layer order"));
    }
    let e = &er.algebra;
    let rho = right_multiplications(er, r)?;
    let r_op = Arc::new(r.opposite());
    let classes = iso_classes(&r_op)?;
    let summand_of_vertex = |v: usize| {
        let g = r.idempotent_basis_index(v).unwrap();
        er.e0.iter().copied().find(|&k| er.ideals.as_ref().unwrap()[k].generator() == g).unwrap()
    };
    let mut summands: Vec<TiltingSummand> = Vec::new();
    for u in classes {
        let b = u.generator();
        let (i, j) = (summand_of_vertex(r.basis()[b].target), summand_of_vertex(r.basis()[b].source));
        let p_i = projective_module(e, i)?;
        let p_j = projective_module(e, j)?;
        let idx_i = e.basis_with_source(i);
        let gen: Vec<Rational> = idx_i.iter().map(|&c| rho[b][c].clone()).collect();
        let span = p_i.span_closure(&[gen]);
        let label = format!("T({})", u.name());
        let (module, inclusion) = p_i.submodule_on(&span, label.clone());
        let cols: Vec<Vec<Rational>> = e
            .basis_with_source(j)
            .iter()
            .map(|&c| {
                let v = e.mul(&e.basis_vector(c), &rho[b]);
                let w: Vec<Rational> = idx_i.iter().map(|&k| v[k].clone()).collect();
                span.coords(&w).expect("a·ρ_u lies in E·ρ_u")
            })
            .collect();
        let quotient = ModuleMap::new(p_j, module.clone(), RationalMatrix::from_columns(&cols, module.dim()))
            .map_err(|_| violation(format!("{label}: a ↦ a·u is not a homomorphism")))?;
        if !quotient.is_surjective() || !inclusion.is_injective() {
            return Err(violation(format!("{label}: witness maps are not exact")));
        }
        if !is_indecomposable(&module)? {
            return Err(violation(format!("{label} is decomposable")));
        }
        if !is_standard_filtered(&module, qh)? || !is_costandard_filtered(&module, qh)? {
            return Err(violation(format!("{label} is not both Δ- and ∇-filtered")));
        }
        let e0_dim: usize = er.e0.iter().map(|&k| module.dim_vector()[k]).sum();
        if e0_dim != u.dim() {
            return Err(violation(format!("{label}: dim e_0 T = {e0_dim} but dim U = {}", u.dim())));
        }
        if let Some(prev) = summands.iter().find(|t| is_isomorphic(&t.module, &module)) {
            return Err(violation(format!("{label} is isomorphic to {}", prev.module.label())));
        }
        summands.push(TiltingSummand {
            ideal: u,
            generator: rho[b].clone(),
            module,
            sub_vertex: i,
            inclusion,
            quotient_vertex: j,
            quotient,
            span,
        });
    }
    if summands.len() != e.vertex_count() {
        return Err(violation(format!("{} tilting summands for {} simples", summands.len(), e.vertex_count())));
    }
    for s in &summands {
        for t in &summands {
            if ext1(&s.module, &t.module)?.dim > 0 {
                return Err(violation(format!("Ext¹({}, {}) ≠ 0", s.module.label(), t.module.label())));
            }
        }
    }
    Ok(TiltingModule { r_op, summands })
}

/// The Ringel dual End(T)^op.
pub fn ringel_dual(tilting: &TiltingModule) -> Result<(EndoAlgebra, Arc<FiniteDimAlgebra>)> {
    let labels: Vec<String> = (0..tilting.summands.len()).map(|k| format!("T{k}")).collect();
    let end = endomorphism_algebra(&tilting.modules(), &labels)?;
    let dual = Arc::new(end.algebra.opposite());
    Ok((end, dual))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCertificate {
    pub source: usize,
    pub target: usize,
    pub hom_dim: usize,
    pub rank: usize,
}

/// Result of the constructive duality check R(E_R) ≅ (E_{R^op})^op.
#[derive(Clone, Debug)]
pub struct RingelReport {
    pub tier: &'static str,
    pub pass: bool,
    pub er: EndoAlgebra,
    pub qh: QhData,
    pub tilting: TiltingModule,
    pub end_t: EndoAlgebra,
    pub ringel_dual: Arc<FiniteDimAlgebra>,
    pub e_op: EndoAlgebra,
    /// F: End(T) → E_{R^op} in the two algebra bases.
    pub functor: RationalMatrix,
    pub certificates: Vec<PairCertificate>,
    /// Layer of each U in R^op and of the E_R summand carrying the tilting summand's top weight.
    pub layer_matching: Vec<(usize, usize)>,
}

/// Builds E_R, T, End(T) and E_{R^op}, and certifies that restriction to e_0 is a bijective,
/// multiplicative map End(T) → E_{R^op}.
pub fn verify_duality(r: &Arc<FiniteDimAlgebra>) -> Result<RingelReport> {
    ensure_monomial(r)?;
    let io = is_ideally_ordered(r)?;
    if !io.ordered {
        let (x, y) = io.witness.unwrap_or_default();
        return Err(Error::Unsupported(format!("'{}' is not ideally ordered (witness {x}, {y})", r.name())));
    }
    let er = build_er(r)?;
    let order = ideal_layer_order(&er)?;
    let qh = analyze(&er.algebra, &order)?;
    let tilting = characteristic_tilting(&er, r, &qh)?;
    let (end_t, dual) = ringel_dual(&tilting)?;
    let r_op = tilting.r_op.clone();
    let e_op = build_er(&r_op)?;
    let e = &er.algebra;
    let rho = right_multiplications(&er, r)?;
    let rho_mat = RationalMatrix::from_columns(&rho, e.dim());
    let theta = |x: &[Rational]| -> Result<Vec<Rational>> {
        solve_linear(&rho_mat, x)?.ok_or_else(|| violation("restriction leaves e_0 E e_0"))
    };
    let ts = &tilting.summands;
    let m = ts.len();
    let ops = e_op.ideals.as_ref().unwrap();
    let embed = |t: &TiltingSummand, c: &[Rational]| -> Vec<Rational> {
        let local = t.inclusion.matrix.mul_vec(c);
        let mut v = zero_vec(e.dim());
        for (k, &b) in e.basis_with_source(t.sub_vertex).iter().enumerate() {
            v[b] = local[k].clone();
        }
        v
    };
    let mut functor = RationalMatrix::zeros(e_op.algebra.dim(), end_t.algebra.dim());
    let mut certificates = Vec::new();
    for k in 0..m {
        // coordinates in T_k of ρ_s for the basis paths s of U_k
        let uk = &ops[k];
        let local_idx = e.basis_with_source(ts[k].sub_vertex);
        let coords_in_t: Vec<Vec<Rational>> = uk
            .basis()
            .iter()
            .map(|&s| {
                let w: Vec<Rational> = local_idx.iter().map(|&c| rho[s][c].clone()).collect();
                ts[k].span.coords(&w).ok_or_else(|| violation(format!("ρ_s ∉ T_{k} for s in U_{k}")))
            })
            .collect::<Result<_>>()?;
        for l in 0..m {
            let ul = &ops[l];
            let h = &end_t.hom[k][l];
            let mut images = Vec::new();
            for (p, phi) in h.basis.iter().enumerate() {
                let mut f = RationalMatrix::zeros(ul.dim(), uk.dim());
                for (col, c) in coords_in_t.iter().enumerate() {
                    let x = theta(&embed(&ts[l], &phi.mul_vec(c)))?;
                    for (s, val) in x.iter().enumerate() {
                        if val.is_zero() {
                            continue;
                        }
                        let row = ul.basis().binary_search(&s).map_err(|_| violation("F(φ) leaves U_l"))?;
                        f.set(row, col, val.clone());
                    }
                }
                let c = e_op.hom[k][l].coords(&f).ok_or_else(|| violation("F(φ) is not R^op-linear"))?;
                for (t, x) in c.iter().enumerate() {
                    functor.set(e_op.offsets[k][l] + t, end_t.offsets[k][l] + p, x.clone());
                }
                images.push(c);
            }
            let rank = Subspace::span(e_op.hom[k][l].dim(), images).dim();
            certificates.push(PairCertificate { source: k, target: l, hom_dim: h.dim(), rank });
        }
    }
    let mut pass = end_t.algebra.dim() == e_op.algebra.dim()
        && certificates.iter().all(|c| c.rank == c.hom_dim)
        && functor.rows() == functor.cols()
        && functor.is_invertible();
    if pass {
        let (a, b) = (&end_t.algebra, &e_op.algebra);
        'outer: for x in 0..a.dim() {
            for y in 0..a.dim() {
                let lhs = functor.mul_vec(&a.mul(&a.basis_vector(x), &a.basis_vector(y)));
                let rhs = b.mul(&functor.column(x), &functor.column(y));
                if lhs != rhs {
                    pass = false;
                    break 'outer;
                }
            }
        }
        for k in 0..m {
            if functor.mul_vec(&a.idempotent(k)) != b.idempotent(k) {
                pass = false;
            }
        }
    }
    if !pass {
        return Err(violation("restriction to e_0 is not an isomorphism End(T) → E_{R^op}"));
    }
    let layers = er.layers.clone().unwrap_or_default();
    let layer_matching = ts
        .iter()
        .map(|t| {
            let dv = t.module.dim_vector();
            let top = (0..dv.len()).filter(|&i| dv[i] > 0).max_by_key(|&i| layers[i]).unwrap_or(0);
            (t.ideal.layer(), layers[top])
        })
        .collect();
    Ok(RingelReport {
        tier: "T1",
        pass,
        er,
        qh,
        tilting,
        end_t,
        ringel_dual: dual,
        e_op,
        functor,
        certificates,
        layer_matching,
    })
}
