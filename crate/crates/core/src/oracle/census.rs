//! Brute-force measurement of intersection numbers `p^r_{1,j}`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Family, IntersectionArray};

use super::space::{PointSpace, CENSUS_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusConfig {
    /// Points per class used as the second vertex when counting.
    pub representatives: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { representatives: 5 }
    }
}

/// Scheme measured from an enumerated point set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeCensus {
    pub family: Family,
    pub point_count: u64,
    /// Raw distance (rank, weight, or residue) to relation class.
    pub class_of_distance: BTreeMap<u32, usize>,
    /// Number of points in each class as seen from the base point.
    pub class_sizes: Vec<u64>,
    /// `measured_p[r][j] = p^r_{1,j}`.
    pub measured_p: Vec<Vec<u64>>,
    pub representatives_checked: Vec<usize>,
    /// Array read off the table: `b_r = p^r_{1,r+1}`, `a_r = p^r_{1,r}`,
    /// `c_r = p^r_{1,r-1}`.
    pub array: IntersectionArray,
    #[serde(skip)]
    pub elapsed_seconds: f64,
}

impl SchemeCensus {
    pub fn n_classes(&self) -> usize {
        self.measured_p.len().saturating_sub(1)
    }

    /// Entries with `|r - j| >= 2` that are nonzero.
    pub fn tridiagonal_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (r, row) in self.measured_p.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                if r.abs_diff(j) >= 2 && p != 0 {
                    out.push(format!("p^{r}_(1,{j}) = {p} but |r-j| >= 2"));
                }
            }
        }
        out
    }

    /// Rows whose sum differs from `b_0`.
    pub fn row_sum_violations(&self) -> Vec<String> {
        let b0 = self.class_sizes.get(1).copied().unwrap_or(0);
        self.measured_p
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let s: u64 = row.iter().sum();
                (s != b0).then(|| format!("sum_j p^{r}_(1,j) = {s} != b_0 = {b0}"))
            })
            .collect()
    }
}

fn classify_all(space: &PointSpace) -> Result<Vec<u32>> {
    let zero = {
        let mut z = Vec::new();
        space.point(0, &mut z);
        z
    };
    let raw_of = |idx: u64, buf: &mut (Vec<u16>, Vec<u8>)| {
        space.point(idx, &mut buf.0);
        space.raw_distance(&zero, &buf.0, &mut buf.1)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..space.len())
            .into_par_iter()
            .map_init(|| (Vec::new(), Vec::new()), |buf, idx| raw_of(idx, buf))
            .collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut buf = (Vec::new(), Vec::new());
        Ok((0..space.len()).map(|idx| raw_of(idx, &mut buf)).collect())
    }
}

/// Measure `p^r_{1,j}` from base point 0 against up to `R` representatives
/// of every class. All representatives of a class must agree.
pub fn census(space: &PointSpace, cfg: &CensusConfig) -> Result<SchemeCensus> {
    let started = Instant::now();
    if space.len() > CENSUS_CAP {
        return Err(Error::TooManyPoints { count: space.len(), cap: CENSUS_CAP });
    }
    if cfg.representatives == 0 {
        return Err(Error::InvalidParameters("census needs at least one representative per class".into()));
    }
    let raws = classify_all(space)?;

    let mut class_of_distance = BTreeMap::new();
    for &raw in &raws {
        if !class_of_distance.contains_key(&raw) {
            let class = space
                .class_of_raw(raw)
                .ok_or_else(|| Error::Census(format!("raw distance {raw} has no class")))?;
            class_of_distance.insert(raw, class);
        }
    }
    let classes: Vec<usize> = raws.iter().map(|r| class_of_distance[r]).collect();
    let n_classes = classes.iter().copied().max().unwrap_or(0);
    let mut members: Vec<Vec<u64>> = vec![Vec::new(); n_classes + 1];
    for (idx, &c) in classes.iter().enumerate() {
        members[c].push(idx as u64);
    }
    if let Some(r) = members.iter().position(|m| m.is_empty()) {
        return Err(Error::Census(format!("class {r} is empty")));
    }
    if n_classes == 0 {
        return Err(Error::Census("only one point class".into()));
    }

    let dim = space.dimension();
    let coords = |idx: u64| {
        let mut v = Vec::with_capacity(dim);
        space.point(idx, &mut v);
        v
    };
    let neighbours: Vec<Vec<u16>> = members[1].iter().map(|&i| coords(i)).collect();

    let mut scratch = Vec::new();
    let mut measured_p = Vec::with_capacity(n_classes + 1);
    let mut representatives_checked = Vec::with_capacity(n_classes + 1);
    for (r, class_members) in members.iter().enumerate() {
        let reps = spread(class_members, cfg.representatives);
        let mut agreed: Option<Vec<u64>> = None;
        for &rep in &reps {
            let y = coords(rep);
            let mut row = vec![0u64; n_classes + 1];
            for z in &neighbours {
                let raw = space.raw_distance(z, &y, &mut scratch);
                let j = space
                    .class_of_raw(raw)
                    .filter(|&j| j <= n_classes)
                    .ok_or_else(|| Error::Census(format!("distance {raw} outside the observed classes")))?;
                row[j] += 1;
            }
            match &agreed {
                None => agreed = Some(row),
                Some(first) if *first != row => {
                    return Err(Error::Census(format!(
                        "representatives of class {r} disagree: {first:?} vs {row:?} (point {rep})"
                    )));
                }
                Some(_) => {}
            }
        }
        measured_p.push(agreed.expect("class is nonempty"));
        representatives_checked.push(reps.len());
    }

    let b: Vec<i64> = (0..n_classes).map(|r| measured_p[r][r + 1] as i64).collect();
    let c: Vec<i64> = (1..=n_classes).map(|r| measured_p[r][r - 1] as i64).collect();
    let a: Vec<i64> = (0..=n_classes).map(|r| measured_p[r][r] as i64).collect();
    let array = IntersectionArray::from_exact(crate::model::ExactArray { b, c, a });

    Ok(SchemeCensus {
        family: space.family(),
        point_count: space.len(),
        class_of_distance,
        class_sizes: members.iter().map(|m| m.len() as u64).collect(),
        measured_p,
        representatives_checked,
        array,
        elapsed_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Up to `k` evenly spaced elements of `items`.
fn spread(items: &[u64], k: usize) -> Vec<u64> {
    if items.len() <= k {
        return items.to_vec();
    }
    let mut out: Vec<u64> = (0..k).map(|t| items[t * items.len() / k]).collect();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: Family) -> SchemeCensus {
        census(&PointSpace::new(f).unwrap(), &CensusConfig::default()).unwrap()
    }

    #[test]
    fn hamming_3_2() {
        let c = run(Family::Hamming { n: 3, q: 2 });
        assert_eq!(c.array, IntersectionArray::from_integers(&[3, 2, 1], &[1, 2, 3]));
        assert_eq!(c.class_sizes, vec![1, 3, 3, 1]);
        assert!(c.tridiagonal_violations().is_empty());
        assert!(c.row_sum_violations().is_empty());
    }

    #[test]
    fn ngon_6() {
        let c = run(Family::NGon { n: 6 });
        assert_eq!(c.array, IntersectionArray::from_integers(&[2, 1, 1], &[1, 1, 2]));
        assert_eq!(c.class_of_distance.len(), 6);
        assert_eq!(c.class_of_distance[&5], 1);
    }

    #[test]
    fn bilinear_3_3_2() {
        let c = run(Family::Bilinear { m: 3, n: 3, q: 2 });
        assert_eq!(c.point_count, 512);
        assert_eq!(c.array, IntersectionArray::from_integers(&[49, 36, 16], &[1, 6, 28]));
        assert_eq!(c.class_sizes, vec![1, 49, 294, 168]);
    }

    #[test]
    fn spread_picks_distinct_items() {
        assert_eq!(spread(&[1, 2, 3], 5), vec![1, 2, 3]);
        assert_eq!(spread(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9], 5), vec![0, 2, 4, 6, 8]);
    }

    #[test]
    fn representatives_must_exist() {
        let space = PointSpace::new(Family::NGon { n: 5 }).unwrap();
        assert!(census(&space, &CensusConfig { representatives: 0 }).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let space = PointSpace::new(Family::Bilinear { m: 5, n: 5, q: 2 }).unwrap();
        assert!(matches!(census(&space, &CensusConfig::default()), Err(Error::TooManyPoints { .. })));
    }
}
