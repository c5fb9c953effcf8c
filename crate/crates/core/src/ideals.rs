//! Principal left ideals Rm of a monomial algebra generated by a basis path m.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{FiniteDimAlgebra, Provenance};
use crate::error::{Error, Result};
use crate::linalg::{q, Rational, RationalMatrix, Subspace};
use crate::modules::{
    column_module, hom_space, is_isomorphic, regular_module, same_algebra, AlgebraModule, HomSpace, ModuleMap,
};

/// The left ideal Rm for a basis path m, with its path basis and annihilator.
#[derive(Clone)]
pub struct MonomialIdeal {
    algebra: Arc<FiniteDimAlgebra>,
    generator: usize,
    basis: Vec<usize>,
    annihilator: Vec<usize>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({}) dim {}", self.name(), self.dim())
    }
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator && same_algebra(&self.algebra, &other.algebra)
    }
}

/// Built from a path-monomial presentation, or a corner or opposite of one.
pub fn is_path_monomial(a: &FiniteDimAlgebra) -> bool {
    a.provenance() == Provenance::Monomial && a.is_monomial()
}

pub(crate) fn ensure_monomial(a: &FiniteDimAlgebra) -> Result<()> {
    if is_path_monomial(a) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("'{}' is not a monomial algebra", a.name())))
    }
}

impl MonomialIdeal {
    pub fn new(algebra: &Arc<FiniteDimAlgebra>, generator: usize) -> Result<Self> {
        ensure_monomial(algebra)?;
        if generator >= algebra.dim() {
            return Err(Error::Input(format!("no basis element with index {generator}")));
        }
        let head = algebra.basis()[generator].target;
        let mut basis = Vec::new();
        let mut annihilator = Vec::new();
        for p in algebra.basis_with_source(head) {
            match algebra.monomial_product(p, generator) {
                Some(c) => basis.push(c),
                None => annihilator.push(p),
            }
        }
        basis.sort_unstable();
        Ok(MonomialIdeal { algebra: algebra.clone(), generator, basis, annihilator })
    }

    /// The ideal generated by the named basis path.
    pub fn by_name(algebra: &Arc<FiniteDimAlgebra>, name: &str) -> Result<Self> {
        let idx = algebra
            .basis()
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| Error::Input(format!("no basis path named '{name}'")))?;
        Self::new(algebra, idx)
    }

    pub fn algebra(&self) -> &Arc<FiniteDimAlgebra> {
        &self.algebra
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn name(&self) -> &str {
        &self.algebra.basis()[self.generator].name
    }

    /// The vertex e with Rm a quotient of Re.
    pub fn head(&self) -> usize {
        self.algebra.basis()[self.generator].target
    }

    pub fn is_lazy(&self) -> bool {
        self.algebra.idempotent_basis_index(self.head()) == Some(self.generator)
    }

    /// Basis paths p·m ≠ 0, as algebra basis indices.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Basis paths q out of the head with q·m = 0.
    pub fn annihilator(&self) -> &[usize] {
        &self.annihilator
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// dim R − dim Rm.
    pub fn layer(&self) -> usize {
        self.algebra.dim() - self.dim()
    }

    pub fn module(&self) -> AlgebraModule {
        column_module(&self.algebra, &self.basis, format!("R({})", self.name()))
    }

    /// Same head and equal annihilators.
    pub fn is_isomorphic_to(&self, other: &MonomialIdeal) -> bool {
        self.head() == other.head() && self.annihilator == other.annihilator
    }

    fn position(&self, b: usize) -> Option<usize> {
        self.basis.binary_search(&b).ok()
    }
}

fn check_same(m: &MonomialIdeal, n: &MonomialIdeal) -> Result<()> {
    if same_algebra(&m.algebra, &n.algebra) {
        Ok(())
    } else {
        Err(Error::Input("ideals of different algebras".into()))
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Whether m ↦ n extends to an R-linear surjection Rm → Rn.
pub fn surjection_exists(m: &MonomialIdeal, n: &MonomialIdeal) -> Result<bool> {
    check_same(m, n)?;
    Ok(m.head() == n.head() && is_subset(&m.annihilator, &n.annihilator))
}

/// The map p·m ↦ p·n, when it is well defined.
pub fn canonical_surjection(m: &MonomialIdeal, n: &MonomialIdeal) -> Result<Option<ModuleMap>> {
    if !surjection_exists(m, n)? {
        return Ok(None);
    }
    let a = &m.algebra;
    let mut mat = RationalMatrix::zeros(n.dim(), m.dim());
    for p in a.basis_with_source(m.head()) {
        let Some(c) = a.monomial_product(p, m.generator) else { continue };
        if let Some(d) = a.monomial_product(p, n.generator) {
            mat.set(n.position(d).unwrap(), m.position(c).unwrap(), q(1));
        }
    }
    Ok(Some(ModuleMap { source: m.module(), target: n.module(), matrix: mat }))
}

/// One ideal per isomorphism class of nonzero monomial left ideals, generated by the
/// canonically smallest path of the class, sorted by layer and then generator.
pub fn iso_classes(a: &Arc<FiniteDimAlgebra>) -> Result<Vec<MonomialIdeal>> {
    ensure_monomial(a)?;
    let mut reps: Vec<MonomialIdeal> = Vec::new();
    for g in 0..a.dim() {
        let m = MonomialIdeal::new(a, g)?;
        if !reps.iter().any(|r| r.is_isomorphic_to(&m)) {
            reps.push(m);
        }
    }
    reps.sort_by_key(|m| (m.layer(), m.generator));
    Ok(reps)
}

/// Index of the class of `m` in `classes`.
pub fn class_index(classes: &[MonomialIdeal], m: &MonomialIdeal) -> Option<usize> {
    classes.iter().position(|c| c.is_isomorphic_to(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealOrderCheck {
    pub ordered: bool,
    /// A pair of paths at one vertex with no surjection in either direction.
    pub witness: Option<(String, String)>,
}

/// For every vertex, the ideals of paths at that vertex are totally preordered by surjections.
pub fn is_ideally_ordered(a: &Arc<FiniteDimAlgebra>) -> Result<IdealOrderCheck> {
    ensure_monomial(a)?;
    let ideals = (0..a.dim()).map(|g| MonomialIdeal::new(a, g)).collect::<Result<Vec<_>>>()?;
    for (i, m) in ideals.iter().enumerate() {
        for n in &ideals[i + 1..] {
            if m.head() != n.head() {
                continue;
            }
            if !surjection_exists(m, n)? && !surjection_exists(n, m)? {
                return Ok(IdealOrderCheck { ordered: false, witness: Some((m.name().into(), n.name().into())) });
            }
        }
    }
    Ok(IdealOrderCheck { ordered: true, witness: None })
}

/// A left approximation Γ → ⊕ X_k by ideal classes of strictly larger layer.
#[derive(Clone, Debug)]
pub struct LeftApproximation {
    pub source: MonomialIdeal,
    pub targets: Vec<MonomialIdeal>,
    /// Γ → ⊕ targets (into the zero module when there are no targets).
    pub map: ModuleMap,
    pub cokernel: AlgebraModule,
}

impl LeftApproximation {
    pub fn is_surjective(&self) -> bool {
        self.cokernel.dim() == 0
    }
}

fn stacked_map(source: &AlgebraModule, parts: &[(AlgebraModule, RationalMatrix)]) -> Result<ModuleMap> {
    let a = source.algebra();
    if parts.is_empty() {
        let zero = column_module(a, &[], "0".into());
        return Ok(ModuleMap { source: source.clone(), target: zero, matrix: RationalMatrix::zeros(0, source.dim()) });
    }
    let modules: Vec<AlgebraModule> = parts.iter().map(|(m, _)| m.clone()).collect();
    let (sum, _) = crate::modules::direct_sum(&modules)?;
    let mut rows = Vec::new();
    for (_, f) in parts {
        rows.extend(f.to_rows());
    }
    Ok(ModuleMap { source: source.clone(), target: sum, matrix: RationalMatrix::from_rows_shaped(rows, source.dim()) })
}

fn finish_left(
    source: &MonomialIdeal,
    targets: Vec<MonomialIdeal>,
    parts: Vec<(AlgebraModule, RationalMatrix)>,
) -> Result<LeftApproximation> {
    let map = stacked_map(&source.module(), &parts)?;
    let cokernel = map.calculus().cokernel;
    Ok(LeftApproximation { source: source.clone(), targets, map, cokernel })
}

/// Minimal left approximation of Γ by the ideal classes of larger layer. For ideally
/// ordered algebras this is the canonical surjection onto the largest proper quotient class;
/// otherwise it is computed from Hom spaces (see [`general_left_approximation`]).
pub fn minimal_left_approximation(g: &MonomialIdeal) -> Result<LeftApproximation> {
    let a = g.algebra();
    if !is_ideally_ordered(a)?.ordered {
        return general_left_approximation(g);
    }
    let classes = iso_classes(a)?;
    let mut best: Option<&MonomialIdeal> = None;
    for c in &classes {
        if c.is_isomorphic_to(g) || !surjection_exists(g, c)? {
            continue;
        }
        if best.is_none_or(|b| c.dim() > b.dim()) {
            best = Some(c);
        }
    }
    match best {
        None => finish_left(g, Vec::new(), Vec::new()),
        Some(n) => {
            let pi = canonical_surjection(g, n)?.expect("surjection exists");
            finish_left(g, vec![n.clone()], vec![(pi.target, pi.matrix)])
        }
    }
}

/// Left approximation into copies of every class of larger layer, one per Hom basis map,
/// followed by greedy removal of components that are not needed.
pub fn general_left_approximation(g: &MonomialIdeal) -> Result<LeftApproximation> {
    let a = g.algebra();
    let classes: Vec<MonomialIdeal> = iso_classes(a)?.into_iter().filter(|c| c.layer() > g.layer()).collect();
    let modules: Vec<AlgebraModule> = classes.iter().map(MonomialIdeal::module).collect();
    let gm = g.module();
    let from_g: Vec<HomSpace> = modules.iter().map(|x| hom_space(&gm, x)).collect::<Result<_>>()?;
    let mut between: HashMap<(usize, usize), HomSpace> = HashMap::new();
    let mut components: Vec<(usize, RationalMatrix)> = Vec::new();
    for (k, h) in from_g.iter().enumerate() {
        for f in &h.basis {
            components.push((k, f.clone()));
        }
    }
    let mut i = components.len();
    while i > 0 {
        i -= 1;
        let mut trial = components.clone();
        trial.remove(i);
        if is_left_approximation(&trial, &from_g, &modules, &mut between)? {
            components = trial;
        }
    }
    let targets = components.iter().map(|(k, _)| classes[*k].clone()).collect();
    let parts = components.into_iter().map(|(k, f)| (modules[k].clone(), f)).collect();
    finish_left(g, targets, parts)
}

fn is_left_approximation(
    components: &[(usize, RationalMatrix)],
    from_g: &[HomSpace],
    modules: &[AlgebraModule],
    between: &mut HashMap<(usize, usize), HomSpace>,
) -> Result<bool> {
    for (x, h) in from_g.iter().enumerate() {
        if h.dim() == 0 {
            continue;
        }
        let mut images = Vec::new();
        for (y, f) in components {
            if let std::collections::hash_map::Entry::Vacant(e) = between.entry((*y, x)) {
                e.insert(hom_space(&modules[*y], &modules[x])?);
            }
            for gmap in &between[&(*y, x)].basis {
                images.push(h.coords(&gmap.mul(f)).expect("composite is a homomorphism"));
            }
        }
        if Subspace::span(h.dim(), images).dim() < h.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hom(coker α_Γ, X) = 0 for every class Γ and every ideal class X.
pub fn has_good_leftpproximations(a: &Arc<FiniteDimAlgebra>) -> Result<bool> {
    let classes = iso_classes(a)?;
    let modules: Vec<AlgebraModule> = classes.iter().map(MonomialIdeal::module).collect();
    for c in &classes {
        let approx = minimal_left_approximation(c)?;
        if approx.is_surjective() {
            continue;
        }
        for x in &modules {
            if hom_space(&approx.cokernel, x)?.dim() > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The inclusion rad Γ = ⊕ R(αm) → Γ over arrows α with αm ≠ 0.
#[derive(Clone, Debug)]
pub struct RightApproximation {
    pub target: MonomialIdeal,
    pub summands: Vec<MonomialIdeal>,
    /// ⊕ summands → Γ; `None` when rad Γ = 0.
    pub map: Option<ModuleMap>,
    pub kernel_dim: usize,
}

pub fn minimal_right_approximation(g: &MonomialIdeal) -> Result<RightApproximation> {
    let a = g.algebra();
    let mut summands = Vec::new();
    for b in a.basis_with_source(g.head()) {
        if a.basis()[b].grade != Some(1) {
            continue;
        }
        if let Some(c) = a.monomial_product(b, g.generator) {
            summands.push(MonomialIdeal::new(a, c)?);
        }
    }
    if summands.is_empty() {
        return Ok(RightApproximation { target: g.clone(), summands, map: None, kernel_dim: 0 });
    }
    let modules: Vec<AlgebraModule> = summands.iter().map(MonomialIdeal::module).collect();
    let (sum, _) = crate::modules::direct_sum(&modules)?;
    let mut mat = RationalMatrix::zeros(g.dim(), sum.dim());
    let mut col = 0;
    for s in &summands {
        for &b in s.basis() {
            mat.set(g.position(b).expect("summand lies in Γ"), col, q(1));
            col += 1;
        }
    }
    let map = ModuleMap { source: sum, target: g.module(), matrix: mat };
    let kernel_dim = map.source.dim() - map.rank();
    Ok(RightApproximation { target: g.clone(), summands, map: Some(map), kernel_dim })
}

/// For p = Σ λ_i m_i ∈ eR over an ideally ordered algebra, the monomial ideal R m_1 ≅ Rp
/// where m_1 has the smallest annihilator among the constituents.
pub fn reduce_principal_to_monomial(a: &Arc<FiniteDimAlgebra>, p: &[Rational]) -> Result<MonomialIdeal> {
    let check = is_ideally_ordered(a)?;
    if !check.ordered {
        return Err(Error::Unsupported(format!("'{}' is not ideally ordered", a.name())));
    }
    if p.len() != a.dim() {
        return Err(Error::Input("element has the wrong length".into()));
    }
    let support: Vec<usize> = (0..p.len()).filter(|&i| !p[i].is_zero()).collect();
    let Some(&first) = support.first() else {
        return Err(Error::Input("the zero element generates the zero ideal".into()));
    };
    let head = a.basis()[first].target;
    if support.iter().any(|&i| a.basis()[i].target != head) {
        return Err(Error::Input("element is not in eR for a single vertex e".into()));
    }
    let ideals = support.iter().map(|&i| MonomialIdeal::new(a, i)).collect::<Result<Vec<_>>>()?;
    let mut best = &ideals[0];
    for m in &ideals[1..] {
        if is_subset(&m.annihilator, &best.annihilator) && m.annihilator.len() < best.annihilator.len() {
            best = m;
        }
    }
    let (rp, _) = regular_module(a).submodule_generated(&[p.to_vec()], "Rp");
    if !is_isomorphic(&rp, &best.module()) {
        return Err(Error::TheoremViolation(format!("R·p is not isomorphic to R·{}", best.name())));
    }
    Ok(best.clone())
}

/// Whether a surjection f: Rm → Rn equals φ∘π for some φ ∈ End(Rn), π the canonical map.
pub fn factorization_check(m: &MonomialIdeal, n: &MonomialIdeal, f: &RationalMatrix) -> Result<bool> {
    check_same(m, n)?;
    let f = ModuleMap::new(m.module(), n.module(), f.clone())?;
    if !f.is_surjective() {
        return Err(Error::Input("factorization_check: map is not surjective".into()));
    }
    let Some(pi) = canonical_surjection(m, n)? else {
        return Ok(false);
    };
    let end = hom_space(&pi.target, &pi.target)?;
    let composites: Vec<Vec<Rational>> = end.basis.iter().map(|phi| phi.mul(&pi.matrix).entries().to_vec()).collect();
    Ok(Subspace::span(f.matrix.entries().len(), composites).contains(f.matrix.entries()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_monomial_algebra;
    use crate::generators::{fixtures, knorrer};

    fn alg(p: crate::algebra::MonomialPresentation) -> Arc<FiniteDimAlgebra> {
        Arc::new(build_monomial_algebra(&p).unwrap())
    }

    #[test]
    fn knorrer_classes() {
        let a = alg(knorrer(5, 2).unwrap());
        let c = iso_classes(&a).unwrap();
        assert_eq!(c.iter().map(MonomialIdeal::dim).collect::<Vec<_>>(), vec![5, 2, 1]);
        assert_eq!(c.iter().map(MonomialIdeal::layer).collect::<Vec<_>>(), vec![0, 3, 4]);
        assert_eq!(c.iter().map(MonomialIdeal::name).collect::<Vec<_>>(), vec!["e", "z1", "z2*z1"]);
        let z1 = MonomialIdeal::by_name(&a, "z1").unwrap();
        let z2 = MonomialIdeal::by_name(&a, "z2").unwrap();
        assert!(surjection_exists(&z1, &z2).unwrap() && surjection_exists(&z2, &z1).unwrap());
        let names: Vec<&str> = z1.annihilator().iter().map(|&i| a.basis()[i].name.as_str()).collect();
        assert_eq!(names, vec!["z1", "z2*z1", "z2^2"]);
        assert!(is_ideally_ordered(&a).unwrap().ordered);
    }

    #[test]
    fn ex7_witness() {
        let a = alg(fixtures::ex7());
        let c = is_ideally_ordered(&a).unwrap();
        assert!(!c.ordered);
        assert_eq!(c.witness, Some(("x".into(), "y".into())));
    }

    #[test]
    fn approximations_of_knorrer() {
        let a = alg(knorrer(5, 2).unwrap());
        let c = iso_classes(&a).unwrap();
        let l = minimal_left_approximation(&c[0]).unwrap();
        assert_eq!(l.targets.len(), 1);
        assert_eq!(l.targets[0].name(), "z1");
        assert!(l.is_surjective());
        let top = minimal_left_approximation(&c[2]).unwrap();
        assert!(top.targets.is_empty() && top.is_surjective());
        let r = minimal_right_approximation(&c[0]).unwrap();
        assert_eq!(r.summands.iter().map(MonomialIdeal::name).collect::<Vec<_>>(), vec!["z1", "z2"]);
        assert_eq!(r.kernel_dim, 0);
    }

    #[test]
    fn reduce_sum_of_monomials() {
        let a = alg(knorrer(5, 2).unwrap());
        let mut p = crate::linalg::zero_vec(a.dim());
        p[1] = q(1);
        p[2] = q(1);
        assert_eq!(reduce_principal_to_monomial(&a, &p).unwrap().name(), "z1");
        let b = alg(fixtures::ex7());
        assert!(matches!(reduce_principal_to_monomial(&b, &p), Err(Error::Unsupported(_))));
    }
}
