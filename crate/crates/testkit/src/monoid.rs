//! The algebra of an affine monoid: one basis vector per grade and
//! `e_s · e_t = e_{s+t}`.

use std::collections::{BTreeMap, BTreeSet};

pub type Grade = Vec<u32>;

pub struct MonoidAlgebra {
    grades: BTreeSet<Grade>,
}

impl MonoidAlgebra {
    pub fn new(grades: impl IntoIterator<Item = Grade>) -> Self {
        MonoidAlgebra {
            grades: grades.into_iter().collect(),
        }
    }

    pub fn grades(&self) -> &BTreeSet<Grade> {
        &self.grades
    }

    /// `s + t` when it is one of the listed grades.
    pub fn product(&self, s: &[u32], t: &[u32]) -> Option<Grade> {
        let st: Grade = s.iter().zip(t).map(|(a, b)| a + b).collect();
        self.grades.contains(&st).then_some(st)
    }

    /// All products that stay among the listed grades.
    pub fn table(&self) -> BTreeMap<(Grade, Grade), Grade> {
        let mut out = BTreeMap::new();
        for s in &self.grades {
            for t in &self.grades {
                if let Some(st) = self.product(s, t) {
                    out.insert((s.clone(), t.clone()), st);
                }
            }
        }
        out
    }
}
