//! Independent oracle: enumerate the point set of a family over a finite
//! field, measure its intersection numbers, and compare them with the
//! closed forms.

pub mod census;
pub mod field;
pub mod space;

use serde::{Deserialize, Serialize};

pub use census::{census, CensusConfig, SchemeCensus};
pub use field::{prime_power, FieldMatrix, FiniteField};
pub use space::{PointSpace, CENSUS_CAP};

use crate::error::Result;
use crate::families;
use crate::model::{self, Family};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: Family,
    pub matches: bool,
    pub mismatches: Vec<String>,
    pub census: SchemeCensus,
}

/// Run the census for `family` and check it against what the library
/// would otherwise use.
///
/// Closed-form families are compared entry by entry. For the census-only
/// families the measured array is checked for consistency: valid array,
/// valencies equal to the class sizes, and total size equal to the number
/// of points.
pub fn verify_family(family: Family, cfg: &CensusConfig) -> Result<FamilyReport> {
    let space = PointSpace::new(family)?;
    let census = census::census(&space, cfg)?;
    let mut mismatches = census.tridiagonal_violations();
    mismatches.extend(census.row_sum_violations());

    if let Some((closed, _, size)) = families::closed_form(family)? {
        if closed != census.array {
            mismatches.push(format!("measured array {} differs from closed form {}", census.array, closed));
        }
        if size != census.point_count {
            mismatches.push(format!("{} points but |X| = {size}", census.point_count));
        }
    }
    mismatches.extend(model::validate_array(&census.array));
    if let Some(v) = census.array.exact_valencies() {
        let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let sizes: Vec<String> = census.class_sizes.iter().map(|x| x.to_string()).collect();
        if v != sizes {
            mismatches.push(format!("valencies {v:?} differ from class sizes {sizes:?}"));
        }
    }
    let total: u64 = census.class_sizes.iter().sum();
    if total != census.point_count {
        mismatches.push(format!("class sizes sum to {total}, not {}", census.point_count));
    }
    if census.n_classes() != space.expected_classes() {
        mismatches.push(format!("{} classes observed, {} expected", census.n_classes(), space.expected_classes()));
    }
    Ok(FamilyReport { family, matches: mismatches.is_empty(), mismatches, census })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families_match() {
        for fam in [
            Family::Hamming { n: 3, q: 3 },
            Family::NGon { n: 9 },
            Family::Bilinear { m: 2, n: 3, q: 2 },
            Family::Alternating { n: 5, q: 2 },
            Family::Hermitian { n: 2, q: 3 },
        ] {
            let r = verify_family(fam, &CensusConfig::default()).unwrap();
            assert!(r.matches, "{fam}: {:?}", r.mismatches);
        }
    }
}
