//! Abstract open books and the homology of the closed manifolds they bound.
//!
//! For a page `Σ` with monodromy `φ` the manifold is the mapping torus
//! `Σ(φ)` (glued by `(x,1) ~ (φ(x),0)`) with a solid torus filling every
//! boundary torus. Its first homology is presented by the basis of `H₁(Σ)`
//! together with one section class `t` per page component, subject to
//! `(φ − id)x = 0` and to `t + δ_i = 0` for every boundary label, where
//! `δ_i = φ(γ_i) − γ_i` for an arc `γ_i` from the component's reference
//! label to label `i`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::surface::{pad, unit_class, ArcClass, Class, CombSurface, TwistWord};
use crate::zmodule::{cokernel, AbelianGroup, IntMatrix};
use crate::{Error, Result};

/// Concrete three-dimensional open book.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OpenBook3 {
    pub page: CombSurface,
    pub monodromy: TwistWord,
}

/// `δ_i` for every label, each relative to its component's reference label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionDefects {
    pub entries: Vec<(String, Class)>,
}

impl SectionDefects {
    pub fn get(&self, label: &str) -> Option<&Class> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, d)| d)
    }
}

/// `(H₀, H₁, H₂, H₃)` of a closed connected oriented 3-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HStar {
    pub h0: AbelianGroup,
    pub h1: AbelianGroup,
    pub h2: AbelianGroup,
    pub h3: AbelianGroup,
}

impl OpenBook3 {
    pub fn new(page: CombSurface, monodromy: TwistWord) -> Result<Self> {
        for t in &monodromy.twists {
            if t.class.len() != page.rank() {
                return Err(Error::DimensionMismatch { expected: page.rank(), found: t.class.len() });
            }
        }
        Ok(OpenBook3 { page, monodromy })
    }

    /// Page with identity monodromy.
    pub fn trivial(page: CombSurface) -> Self {
        OpenBook3 { page, monodromy: TwistWord::identity() }
    }

    pub fn labels(&self) -> Vec<String> {
        self.page.labels()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.page.euler_characteristic()
    }

    pub fn monodromy_matrix(&self) -> Result<IntMatrix> {
        self.monodromy.matrix(&self.page)
    }

    /// First label of every page component.
    pub fn reference_labels(&self) -> Vec<String> {
        self.page.components().into_iter().map(|c| c.labels[0].clone()).collect()
    }

    pub fn section_defects(&self) -> Result<SectionDefects> {
        let n = self.page.rank();
        self.section_defects_perturbed(&|_| crate::surface::zero_class(n))
    }

    /// Defects computed from the standard arcs shifted by the closed class
    /// `perturb(label)`. The resulting H₁ must not depend on the shift.
    pub fn section_defects_perturbed(&self, perturb: &dyn Fn(&str) -> Class) -> Result<SectionDefects> {
        let mut entries = Vec::new();
        for comp in self.page.components() {
            let reference = &comp.labels[0];
            for label in &comp.labels {
                let n = self.page.rank();
                if label == reference {
                    entries.push((label.clone(), crate::surface::zero_class(n)));
                    continue;
                }
                let shift = perturb(label);
                let arc = self.page.arc(reference, label)?.perturbed(&shift);
                entries.push((label.clone(), self.defect_of(&arc, &shift)?));
            }
        }
        let order = self.labels();
        entries.sort_by_key(|(l, _)| order.iter().position(|x| x == l));
        Ok(SectionDefects { entries })
    }

    fn defect_of(&self, arc: &ArcClass, start_offset: &[BigInt]) -> Result<Class> {
        let moved = self.monodromy.apply_arc(&self.page, arc)?;
        Ok(moved.offset.iter().zip(start_offset).map(|(a, b)| a - b).collect())
    }

    pub fn manifold_h1(&self) -> Result<AbelianGroup> {
        self.manifold_h1_with(&self.section_defects()?)
    }

    /// H₁ from explicitly supplied defects.
    pub fn manifold_h1_with(&self, defects: &SectionDefects) -> Result<AbelianGroup> {
        let n = self.page.rank();
        let comps = self.page.components();
        let rows = n + comps.len();
        let phi = self.monodromy_matrix()?;
        let mut columns: Vec<Class> = Vec::new();
        for k in 0..n {
            let mut col = phi.column(k);
            col[k] -= 1;
            columns.push(pad(&col, rows));
        }
        for (ci, comp) in comps.iter().enumerate() {
            for label in &comp.labels {
                let d = defects.get(label).ok_or_else(|| Error::UnknownLabel(label.clone()))?;
                let mut col = pad(d, rows);
                col[n + ci] += 1;
                columns.push(col);
            }
        }
        Ok(cokernel(&IntMatrix::from_columns(rows, &columns)))
    }

    pub fn manifold_h_star(&self) -> Result<HStar> {
        if !self.page.is_connected() {
            return Err(Error::Disconnected);
        }
        let h1 = self.manifold_h1()?;
        Ok(HStar {
            h0: AbelianGroup::free(1),
            h2: AbelianGroup::free(h1.free_rank()),
            h1,
            h3: AbelianGroup::free(1),
        })
    }

    /// Disjoint union with labels prefixed as in
    /// [`CombSurface::disjoint_union`]; the words act on their own blocks.
    pub fn disjoint_union(&self, prefix_a: &str, other: &OpenBook3, prefix_b: &str) -> Result<OpenBook3> {
        let page = self.page.disjoint_union(prefix_a, &other.page, prefix_b)?;
        let n = page.rank();
        let na = self.page.rank();
        let wa = self.monodromy.as_vectors(n);
        let wb = other.monodromy.map_classes(|c| pad(&CombSurface::embed_second(na, c), n));
        OpenBook3::new(page, wa.compose(&wb))
    }
}

/// Independent oracle for the binding sum of two open books along their full
/// bindings: that manifold fibres over the circle with closed fibre
/// `(−Σ₀) ∪_B Σ₁`. Reversing the orientation of the first page reverses its
/// circle direction, so the glued monodromy is `φ₀⁻¹` on `Σ₀` and `φ₁` on
/// `Σ₁`, and the answer is `ℤ ⊕ coker(φ̂ − id)`.
pub fn fibration_oracle_h1(ob0: &OpenBook3, ob1: &OpenBook3, matching: &[(String, String)]) -> Result<AbelianGroup> {
    let double = CombSurface::glue_double(&ob0.page, &ob1.page, matching)?;
    let n = double.n_generators();
    let (n0, n1) = (double.n0, double.n1);
    let inv0 = ob0.monodromy.inverse();
    let mut columns: Vec<Class> = Vec::new();
    for j in 0..double.relations.cols() {
        columns.push(double.relations.column(j));
    }
    let minus_id = |mut v: Class, k: usize| {
        v[k] -= 1;
        v
    };
    for k in 0..n0 {
        let img = inv0.apply(&ob0.page, &unit_class(n0, k))?;
        columns.push(minus_id(double.embed0(&img), k));
    }
    for k in 0..n1 {
        let img = ob1.monodromy.apply(&ob1.page, &unit_class(n1, k))?;
        columns.push(minus_id(double.embed1(&img), n0 + k));
    }
    let (r0, r1) = &matching[0];
    for (l0, l1) in matching.iter().skip(1) {
        let arc0 = ob0.page.arc(r0, l0)?;
        let arc1 = ob1.page.arc(r1, l1)?;
        let d0 = inv0.apply_arc(&ob0.page, &arc0)?.offset;
        let d1 = ob1.monodromy.apply_arc(&ob1.page, &arc1)?.offset;
        let mut col = double.embed0(&d0);
        for (a, b) in col.iter_mut().zip(double.embed1(&d1)) {
            *a -= b;
        }
        // φ̂(ℓ_j) − ℓ_j
        columns.push(col);
    }
    let fibre = cokernel(&IntMatrix::from_columns(n, &columns));
    Ok(AbelianGroup::free(1).direct_sum(&fibre))
}

/// Descriptor of a page or binding in the symbolic calculus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    pub name: String,
    pub chi: i64,
}

/// Open book known only through descriptors, in any dimension `n ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicOpenBook {
    pub dim: usize,
    /// Page `Σ` with its Euler characteristic.
    pub page: Descriptor,
    /// Binding `B` by name; `chi` is the Euler characteristic of the binding's
    /// own page `Σ′`.
    pub binding: Descriptor,
    pub monodromy: String,
    pub manifold: Option<String>,
}

impl SymbolicOpenBook {
    pub fn new(dim: usize, page: Descriptor, binding: Descriptor) -> Result<Self> {
        if dim < 3 {
            return Err(Error::Descriptor(format!("dimension {dim} is below 3")));
        }
        Ok(SymbolicOpenBook { dim, page, binding, monodromy: "identity".into(), manifold: None })
    }

    /// Symbolic books carry no homology model.
    pub fn manifold_h1(&self) -> Result<AbelianGroup> {
        Err(Error::Symbolic)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{class_from, CurveName};

    fn annulus_power(k: i64) -> OpenBook3 {
        let page = CombSurface::annulus();
        let w = TwistWord::resolve(&page, &[(CurveName::Core, k)]).unwrap();
        OpenBook3::new(page, w).unwrap()
    }

    #[test]
    fn small_manifolds() {
        let s3 = OpenBook3::trivial(CombSurface::disc());
        assert_eq!(s3.manifold_h1().unwrap(), AbelianGroup::trivial());
        assert_eq!(
            s3.manifold_h_star().unwrap(),
            HStar {
                h0: AbelianGroup::free(1),
                h1: AbelianGroup::trivial(),
                h2: AbelianGroup::trivial(),
                h3: AbelianGroup::free(1)
            }
        );
        let s2s1 = OpenBook3::trivial(CombSurface::annulus());
        assert_eq!(s2s1.manifold_h1().unwrap(), AbelianGroup::free(1));
        assert_eq!(s2s1.manifold_h_star().unwrap().h2, AbelianGroup::free(1));
        assert_eq!(annulus_power(1).manifold_h1().unwrap(), AbelianGroup::trivial());
        let l2 = annulus_power(2).manifold_h_star().unwrap();
        assert_eq!(l2.h1, AbelianGroup::from_orders(0, &[2]));
        assert_eq!(l2.h2, AbelianGroup::trivial());
    }

    #[test]
    fn monodromy_matrices() {
        assert_eq!(annulus_power(0).monodromy_matrix().unwrap(), IntMatrix::identity(1));
        assert_eq!(annulus_power(5).monodromy_matrix().unwrap(), IntMatrix::identity(1));
        let page = CombSurface::standard(1, 1).unwrap();
        let w = TwistWord::resolve(&page, &[(CurveName::A(1), 1)]).unwrap();
        let ob = OpenBook3::new(page, w).unwrap();
        assert_eq!(ob.monodromy_matrix().unwrap(), IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
    }

    #[test]
    fn defects() {
        let d = annulus_power(4).section_defects().unwrap();
        assert_eq!(d.get("1").unwrap(), &class_from(&[0]));
        assert_eq!(d.get("2").unwrap(), &class_from(&[-4]));
        assert_eq!(annulus_power(0).section_defects().unwrap().get("2").unwrap(), &class_from(&[0]));
        let disc = OpenBook3::trivial(CombSurface::disc()).section_defects().unwrap();
        assert_eq!(disc.entries.len(), 1);
    }

    #[test]
    fn oracle_examples() {
        let m1 = vec![("1".to_string(), "1".to_string())];
        let m2 = vec![("1".to_string(), "1".to_string()), ("2".to_string(), "2".to_string())];
        let disc = OpenBook3::trivial(CombSurface::disc());
        assert_eq!(fibration_oracle_h1(&disc, &disc, &m1).unwrap(), AbelianGroup::free(1));
        let ann = OpenBook3::trivial(CombSurface::annulus());
        assert_eq!(fibration_oracle_h1(&ann, &ann, &m2).unwrap(), AbelianGroup::free(3));
        assert_eq!(fibration_oracle_h1(&annulus_power(1), &ann, &m2).unwrap(), AbelianGroup::free(2));
        assert!(fibration_oracle_h1(&disc, &ann, &m1).is_err());
    }

    #[test]
    fn symbolic_refuses_h1() {
        let b = SymbolicOpenBook::new(
            4,
            Descriptor { name: "D^3".into(), chi: 1 },
            Descriptor { name: "S^2".into(), chi: 1 },
        )
        .unwrap();
        assert_eq!(b.manifold_h1(), Err(Error::Symbolic));
    }
}
