use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{class_size, CharacterEngine};
use crate::error::{Error, Result};
use crate::partitions::{count_multipartitions, enumerate_multipartitions, MultiPartition};

pub const DEFAULT_CELL_BUDGET: u64 = 50_000_000;

/// Full character table of `G ≀ S_n`, rows and columns in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTable {
    pub group: String,
    pub n: usize,
    pub row_labels: Vec<MultiPartition>,
    pub col_labels: Vec<MultiPartition>,
    #[serde(with = "decimal_vec")]
    pub class_sizes: Vec<BigUint>,
    #[serde(with = "decimal_matrix")]
    pub values: Vec<Vec<BigInt>>,
}

/// Refuses tables with more than `budget` cells.
pub fn check_budget(n: usize, k: usize, budget: u64) -> Result<u64> {
    let side = count_multipartitions(n, k);
    let cells = &side * &side;
    if cells > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            cells: cells.to_string(),
            budget,
        });
    }
    Ok(u64::try_from(cells).expect("cells within a u64 budget"))
}

/// Every cell via the MN recursion. Cells are independent, so the work is
/// spread over the current rayon pool; the result does not depend on the
/// schedule.
pub fn character_table(engine: &CharacterEngine, n: usize, budget: u64) -> Result<CharTable> {
    let group = engine.group();
    check_budget(n, group.k(), budget)?;
    let labels: Vec<MultiPartition> = enumerate_multipartitions(n, group.k()).collect();
    let side = labels.len();
    let flat: Vec<BigInt> = (0..side * side)
        .into_par_iter()
        .map(|cell| engine.mn_character(&labels[cell / side], &labels[cell % side]))
        .collect::<Result<_>>()?;
    let values = flat.chunks(side).map(<[BigInt]>::to_vec).collect();
    let class_sizes = labels
        .iter()
        .map(|mu| class_size(group, mu, n))
        .collect::<Result<_>>()?;
    Ok(CharTable {
        group: group.name.clone(),
        n,
        row_labels: labels.clone(),
        col_labels: labels,
        class_sizes,
        values,
    })
}

impl CharTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: CharTable = serde_json::from_str(text)?;
        let side = table.row_labels.len();
        if table.col_labels.len() != side
            || table.class_sizes.len() != side
            || table.values.len() != side
            || table.values.iter().any(|r| r.len() != side)
        {
            return Err(Error::InvalidArgument(
                "character table is not square".into(),
            ));
        }
        Ok(table)
    }

    /// `lambda,mu,value` rows; labels are quoted nested part lists.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,mu,value\n");
        for (lambda, row) in self.row_labels.iter().zip(&self.values) {
            for (mu, v) in self.col_labels.iter().zip(row) {
                writeln!(out, "\"{lambda}\",\"{mu}\",{v}").unwrap();
            }
        }
        out
    }

    /// Reads the cell list written by [`CharTable::to_csv`] back into
    /// `(lambda, mu, value)` triples. Lines starting with `#` are skipped.
    pub fn parse_csv(text: &str) -> Result<Vec<(MultiPartition, MultiPartition, BigInt)>> {
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        if lines.next() != Some("lambda,mu,value") {
            return Err(Error::InvalidArgument("missing CSV header".into()));
        }
        lines
            .filter(|l| !l.is_empty())
            .map(|line| {
                let bad = || Error::InvalidArgument(format!("bad CSV row {line:?}"));
                let rest = line.strip_prefix('"').ok_or_else(bad)?;
                let (lambda, rest) = rest.split_once("\",\"").ok_or_else(bad)?;
                let (mu, value) = rest.split_once("\",").ok_or_else(bad)?;
                Ok((
                    serde_json::from_str(lambda)?,
                    serde_json::from_str(mu)?,
                    value.parse().map_err(|_| bad())?,
                ))
            })
            .collect()
    }

    /// Column holding class `mu`.
    pub fn column_of(&self, mu: &MultiPartition) -> Option<usize> {
        self.col_labels.iter().position(|c| c == mu)
    }
}

mod decimal_vec {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

mod decimal_matrix {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            m.iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}
