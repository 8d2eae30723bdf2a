use std::sync::Arc;

use serde::Serialize;

use crate::exact::Torsion;
use crate::groups::{Elem, FiniteGroup, Subgroup, IDENTITY};

/// How one element acts in a realization: the translation it induces on the
/// base torus (coordinates in Q/Z, two per torus factor) and its fibre twist,
/// one entry per diagonal coordinate. The fibre entries are the scalars by
/// which the element acts exactly when the base translation is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PointAction {
    pub base: Vec<Torsion>,
    pub fibre: Vec<Torsion>,
}

impl PointAction {
    pub fn fixes_base(&self) -> bool {
        self.base.iter().all(Torsion::is_zero)
    }

    pub fn is_trivial(&self) -> bool {
        self.fixes_base() && self.fibre.iter().all(Torsion::is_zero)
    }

    /// The common fibre scalar, if the element acts as one.
    pub fn scalar(&self) -> Option<Torsion> {
        if !self.fixes_base() {
            return None;
        }
        let first = *self.fibre.first()?;
        self.fibre.iter().all(|&t| t == first).then_some(first)
    }

    /// Action on the external tensor product: bases side by side, fibre
    /// coordinates indexed by pairs (row-major).
    pub fn tensor(&self, other: &PointAction) -> PointAction {
        let mut base = self.base.clone();
        base.extend_from_slice(&other.base);
        let fibre = self.fibre.iter().flat_map(|&a| other.fibre.iter().map(move |&b| a + b)).collect();
        PointAction { base, fibre }
    }
}

/// The surjection η from the group onto the base translation group
/// Λ_{d_1} × ... × Λ_{d_n}, one modulus per torus factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseMap {
    pub moduli: Vec<u64>,
    pub eta: Vec<Vec<Torsion>>,
}

impl BaseMap {
    pub fn target_order(&self) -> usize {
        self.moduli.iter().map(|&d| (d * d) as usize).product()
    }

    pub fn image_order(&self) -> usize {
        let mut img: Vec<&Vec<Torsion>> = self.eta.iter().collect();
        img.sort_unstable();
        img.dedup();
        img.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.target_order()
    }
}

/// Group-theoretic shadow of an action ϱ: G ↷ π.
///
/// `lambda[g]` is `Some` exactly on the scalar subgroup D(ϱ) and stores
/// λ_ϱ(g) additively in Q/Z.
#[derive(Debug, Clone)]
pub struct ActionDatum {
    pub group: Arc<FiniteGroup>,
    pub base_kernel: Subgroup,
    pub scalar_subgroup: Subgroup,
    pub lambda: Vec<Option<Torsion>>,
    pub faithful: bool,
    pub base: BaseMap,
    pub rank: usize,
    pub realization: Option<Vec<PointAction>>,
}

impl ActionDatum {
    /// Derives every field from a realization.
    pub fn from_realization(group: Arc<FiniteGroup>, moduli: Vec<u64>, points: Vec<PointAction>) -> ActionDatum {
        let n = group.order();
        let rank = points.first().map_or(1, |p| p.fibre.len());
        let base_kernel = Subgroup::from_mask(points.iter().map(PointAction::fixes_base).collect());
        let lambda: Vec<Option<Torsion>> = points.iter().map(PointAction::scalar).collect();
        let scalar_subgroup = Subgroup::from_mask(lambda.iter().map(Option::is_some).collect());
        let eta = points.iter().map(|p| p.base.clone()).collect();
        debug_assert_eq!(points.len(), n);
        let mut datum = ActionDatum {
            group,
            base_kernel,
            scalar_subgroup,
            lambda,
            faithful: false,
            base: BaseMap { moduli, eta },
            rank,
            realization: Some(points),
        };
        datum.faithful = datum.action_kernel() == [IDENTITY];
        datum
    }

    pub fn lambda(&self, g: Elem) -> Option<Torsion> {
        self.lambda[g as usize]
    }

    /// ker ϱ = {g ∈ D(ϱ) : λ(g) = 0}.
    pub fn action_kernel(&self) -> Vec<Elem> {
        self.scalar_subgroup.members().iter().copied().filter(|&g| self.lambda(g) == Some(Torsion::ZERO)).collect()
    }

    /// Elements acting trivially in the realization, by enumeration.
    pub fn realized_kernel(&self) -> Option<Vec<Elem>> {
        let pts = self.realization.as_ref()?;
        Some(self.group.elements().filter(|&g| pts[g as usize].is_trivial()).collect())
    }

    /// |B(ϱ)| = |G / ker ϱ̄|.
    pub fn b_order(&self) -> usize {
        self.group.order() / self.base_kernel.order()
    }

    /// |Z̄(ϱ)| = |Z(G) / D(ϱ)|, defined for faithful actions.
    pub fn zbar_order(&self) -> Option<usize> {
        self.faithful.then(|| self.group.center().order() / self.scalar_subgroup.order())
    }

    /// Same base kernel and base map: the two actions share a diagram.
    pub fn same_base(&self, other: &ActionDatum) -> bool {
        self.group.order() == other.group.order() && self.base_kernel == other.base_kernel && self.base == other.base
    }

    pub fn summary(&self) -> ActionSummary {
        let g = &self.group;
        let labels = |s: &Subgroup| g.generators_of(s).iter().map(|&x| g.label(x).to_vec()).collect();
        ActionSummary {
            group: g.name().to_string(),
            order: g.order(),
            rank: self.rank,
            base_moduli: self.base.moduli.clone(),
            kernel_generators: labels(&self.base_kernel),
            scalar_generators: labels(&self.scalar_subgroup),
            lambda: self
                .scalar_subgroup
                .members()
                .iter()
                .map(|&x| (g.label(x).to_vec(), self.lambda(x).unwrap_or(Torsion::ZERO)))
                .collect(),
            faithful: self.faithful,
            b_order: self.b_order(),
            zbar_order: self.zbar_order(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionSummary {
    pub group: String,
    pub order: usize,
    pub rank: usize,
    pub base_moduli: Vec<u64>,
    pub kernel_generators: Vec<Vec<u32>>,
    pub scalar_generators: Vec<Vec<u32>>,
    pub lambda: Vec<(Vec<u32>, Torsion)>,
    pub faithful: bool,
    pub b_order: usize,
    pub zbar_order: Option<usize>,
}

/// Exactness and inclusion checks on the diagram of an action.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub order: usize,
    pub kernel_order: usize,
    pub b_order: usize,
    pub eta_image_order: usize,
    pub eta_surjective: bool,
    /// |G| = |ker ϱ̄|·|B(ϱ)| and η has image of order |B(ϱ)|.
    pub exact: bool,
    pub scalars_in_kernel: bool,
    pub lambda_is_hom: bool,
    /// D(ϱ) ⊆ Z(G); only required of faithful actions.
    pub scalars_central: bool,
    pub faithful: bool,
    pub zbar_order: Option<usize>,
    pub pass: bool,
}

pub fn diagram_report(r: &ActionDatum) -> DiagramReport {
    let g = &r.group;
    let d = &r.scalar_subgroup;
    let eta_image_order = r.base.image_order();
    let kernel_order = r.base_kernel.order();
    let b_order = r.b_order();
    let exact = kernel_order * b_order == g.order()
        && eta_image_order == b_order
        && g.elements().all(|x| r.base_kernel.contains(x) == r.base.eta[x as usize].iter().all(Torsion::is_zero));
    let scalars_in_kernel = d.is_subset_of(&r.base_kernel);
    let lambda_is_hom = d.members().iter().all(|&x| {
        d.members().iter().all(|&y| match (r.lambda(x), r.lambda(y), r.lambda(g.mul(x, y))) {
            (Some(a), Some(b), Some(c)) => a + b == c,
            _ => false,
        })
    });
    let scalars_central = g.is_central(d);
    let pass = exact && scalars_in_kernel && lambda_is_hom && (!r.faithful || scalars_central);
    DiagramReport {
        order: g.order(),
        kernel_order,
        b_order,
        eta_image_order,
        eta_surjective: r.base.is_surjective(),
        exact,
        scalars_in_kernel,
        lambda_is_hom,
        scalars_central,
        faithful: r.faithful,
        zbar_order: r.zbar_order(),
        pass,
    }
}
