use crate::analytic::{complex_solve, ScalarMatrix};
use crate::exactnum::{GaussianRational, Scalar};
use crate::linalg::{solve, ExactMatrix};
use crate::Error;

/// Vandermonde matrices over a list of atoms: `vdm` has `(i,j)` entry
/// `β_i^{j-1}`, the modified `vdm′` has `β_i^j`, with `j` counted from 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ModifiedVandermonde {
    betas: Vec<Scalar>,
}

impl ModifiedVandermonde {
    pub fn new(betas: Vec<Scalar>) -> Self {
        Self { betas }
    }

    pub fn betas(&self) -> &[Scalar] {
        &self.betas
    }

    fn build(&self, cols: usize, offset: u32) -> ScalarMatrix {
        let entries = self
            .betas
            .iter()
            .flat_map(|b| (0..cols as u32).map(move |j| b.pow(j + offset)))
            .collect();
        ScalarMatrix::new(self.betas.len(), cols, entries).expect("entry count matches")
    }

    pub fn vdm(&self, cols: usize) -> ScalarMatrix {
        self.build(cols, 0)
    }

    pub fn vdm_prime(&self, cols: usize) -> ScalarMatrix {
        self.build(cols, 1)
    }

    /// `α` with `α · vdm′ = (c_0, …, c_{r-1})`, i.e. `∑_i α_i β_i^j = c_{j-1}`.
    /// Exact when every atom is.
    pub fn solve_masses(&self, c: &[GaussianRational]) -> Result<Vec<Scalar>, Error> {
        let r = self.betas.len();
        if c.len() != r {
            return Err(Error::Shape(format!("{} values for {r} atoms", c.len())));
        }
        let exact: Option<Vec<&GaussianRational>> = self.betas.iter().map(Scalar::as_exact).collect();
        match exact {
            Some(betas) => {
                let entries = (1..=r as u32)
                    .flat_map(|j| betas.iter().map(move |b| b.pow(j)))
                    .collect();
                Ok(solve(&ExactMatrix::new(r, r, entries)?, c)?
                    .into_iter()
                    .map(Scalar::Exact)
                    .collect())
            }
            None => {
                let a = (1..=r as u32)
                    .map(|j| self.betas.iter().map(|b| b.pow(j).to_complex()).collect())
                    .collect();
                let b = c.iter().map(GaussianRational::to_complex64).collect();
                Ok(complex_solve(a, b)?.into_iter().map(Scalar::Numeric).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_contracts() {
        let v = ModifiedVandermonde::new(vec![Scalar::from_int(2), Scalar::from_int(3)]);
        let m = v.vdm(3);
        assert_eq!(m.row(1), &[Scalar::from_int(1), Scalar::from_int(3), Scalar::from_int(9)]);
        let m = v.vdm_prime(2);
        assert_eq!(m.row(0), &[Scalar::from_int(2), Scalar::from_int(4)]);
    }

    #[test]
    fn masses_from_first_terms() {
        // c_n = 2·3^{n+1} - 2^{n+1}
        let v = ModifiedVandermonde::new(vec![Scalar::from_int(2), Scalar::from_int(3)]);
        let c = [GaussianRational::from_int(4), GaussianRational::from_int(14)];
        assert_eq!(v.solve_masses(&c).unwrap(), vec![Scalar::from_int(-1), Scalar::from_int(2)]);
    }
}
