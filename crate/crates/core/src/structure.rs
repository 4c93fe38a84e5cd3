use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::greens::GreensStructure;
use crate::rees::ReesCoordinatization;
use crate::semigroup::FiniteSemigroup;

/// A semigroup together with its Green's structure and the Rees coordinates
/// of every regular J-class.
#[derive(Debug, Clone)]
pub struct Structure {
    pub semigroup: FiniteSemigroup,
    pub greens: GreensStructure,
    rees: Vec<Option<ReesCoordinatization>>,
}

impl Structure {
    pub fn new(semigroup: FiniteSemigroup) -> Self {
        let greens = GreensStructure::compute(&semigroup);
        let rees = (0..greens.num_jclasses())
            .into_par_iter()
            .map(|j| ReesCoordinatization::compute(&semigroup, &greens, j).ok())
            .collect();
        Structure {
            semigroup,
            greens,
            rees,
        }
    }

    pub fn rees(&self, j: usize) -> Result<&ReesCoordinatization> {
        self.rees.get(j).and_then(Option::as_ref).ok_or(Error::NotRegular(j))
    }

    pub fn regular_jclasses(&self) -> Vec<usize> {
        self.greens.regular_jclasses()
    }
}
