//! The input group `G`, given entirely by class-level data: class labels,
//! centralizer orders and an integer character table.
//!
//! Validation checks integrality and both orthogonality relations. Whether
//! every element is conjugate to its prime-to-order powers cannot be decided
//! from class data alone, so it is not checked; an integer table implies it.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    pub name: String,
    pub class_labels: Vec<String>,
    /// `z_j = |G| / |class j|`.
    pub centralizer_orders: Vec<BigUint>,
    pub identity_class: usize,
    pub trivial_char: usize,
    /// Rows are irreducible characters, columns are classes.
    pub table: Vec<Vec<BigInt>>,
}

/// One violated invariant of a [`GroupData`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    IndexOutOfRange {
        field: &'static str,
        index: usize,
    },
    NonPositiveCentralizer {
        class: usize,
    },
    ClassSizeNotIntegral {
        class: usize,
    },
    ClassSizesSum {
        sum: BigUint,
        order: BigUint,
    },
    TrivialCharacter {
        class: usize,
    },
    NonPositiveDegree {
        row: usize,
    },
    RowOrthogonality {
        r: usize,
        s: usize,
        got: BigInt,
        expected: BigInt,
    },
    ColumnOrthogonality {
        i: usize,
        j: usize,
        got: BigInt,
        expected: BigInt,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(msg) => write!(f, "shape: {msg}"),
            Violation::IndexOutOfRange { field, index } => {
                write!(f, "{field} = {index} is out of range")
            }
            Violation::NonPositiveCentralizer { class } => {
                write!(f, "centralizer order of class {class} is not positive")
            }
            Violation::ClassSizeNotIntegral { class } => {
                write!(f, "|G| / z_{class} is not an integer")
            }
            Violation::ClassSizesSum { sum, order } => {
                write!(f, "class sizes sum to {sum}, expected |G| = {order}")
            }
            Violation::TrivialCharacter { class } => {
                write!(f, "trivial character is not 1 on class {class}")
            }
            Violation::NonPositiveDegree { row } => {
                write!(f, "degree of character {row} is not positive")
            }
            Violation::RowOrthogonality {
                r,
                s,
                got,
                expected,
            } => {
                write!(
                    f,
                    "row orthogonality fails for ({r},{s}): got {got}, expected {expected}"
                )
            }
            Violation::ColumnOrthogonality {
                i,
                j,
                got,
                expected,
            } => write!(
                f,
                "column orthogonality fails for ({i},{j}): got {got}, expected {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub const BUILTIN_NAMES: [&str; 7] = ["trivial", "Z2", "Z2xZ2", "S3", "S4", "D8", "Q8"];

impl GroupData {
    pub fn k(&self) -> usize {
        self.class_labels.len()
    }

    /// `|G|`, the centralizer order of the identity class.
    pub fn order(&self) -> BigUint {
        self.centralizer_orders[self.identity_class].clone()
    }

    pub fn class_size(&self, class: usize) -> BigUint {
        self.order() / &self.centralizer_orders[class]
    }

    pub fn degree(&self, row: usize) -> &BigInt {
        &self.table[row][self.identity_class]
    }

    pub fn value(&self, row: usize, class: usize) -> &BigInt {
        &self.table[row][class]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let k = self.k();
        if k == 0 {
            v.push(Violation::Shape("no classes".into()));
            return ValidationReport { violations: v };
        }
        if self.centralizer_orders.len() != k {
            v.push(Violation::Shape(format!(
                "{} centralizer orders for {k} classes",
                self.centralizer_orders.len()
            )));
        }
        if self.table.len() != k || self.table.iter().any(|row| row.len() != k) {
            v.push(Violation::Shape(format!("character table is not {k}x{k}")));
        }
        if self.identity_class >= k {
            v.push(Violation::IndexOutOfRange {
                field: "identity_class",
                index: self.identity_class,
            });
        }
        if self.trivial_char >= k {
            v.push(Violation::IndexOutOfRange {
                field: "trivial_char",
                index: self.trivial_char,
            });
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }

        for (class, z) in self.centralizer_orders.iter().enumerate() {
            if z.is_zero() {
                v.push(Violation::NonPositiveCentralizer { class });
            }
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }

        let order = self.order();
        let mut sizes = Vec::with_capacity(k);
        for (class, z) in self.centralizer_orders.iter().enumerate() {
            let (q, r) = order.div_rem(z);
            if !r.is_zero() {
                v.push(Violation::ClassSizeNotIntegral { class });
            }
            sizes.push(BigInt::from(q));
        }
        let sum: BigInt = sizes.iter().sum();
        if sum != BigInt::from(order.clone()) {
            v.push(Violation::ClassSizesSum {
                sum: sum.to_biguint().unwrap_or_default(),
                order: order.clone(),
            });
        }

        for class in 0..k {
            if !self.table[self.trivial_char][class].is_one() {
                v.push(Violation::TrivialCharacter { class });
            }
        }
        for row in 0..k {
            if !self.degree(row).is_positive() {
                v.push(Violation::NonPositiveDegree { row });
            }
        }

        let order_int = BigInt::from(order);
        for r in 0..k {
            for s in r..k {
                let got: BigInt = (0..k)
                    .map(|j| &sizes[j] * &self.table[r][j] * &self.table[s][j])
                    .sum();
                let expected = if r == s {
                    order_int.clone()
                } else {
                    BigInt::zero()
                };
                if got != expected {
                    v.push(Violation::RowOrthogonality {
                        r,
                        s,
                        got,
                        expected,
                    });
                }
            }
        }
        for i in 0..k {
            for j in i..k {
                let got: BigInt = (0..k).map(|r| &self.table[r][i] * &self.table[r][j]).sum();
                let expected = if i == j {
                    BigInt::from(self.centralizer_orders[i].clone())
                } else {
                    BigInt::zero()
                };
                if got != expected {
                    v.push(Violation::ColumnOrthogonality {
                        i,
                        j,
                        got,
                        expected,
                    });
                }
            }
        }
        ValidationReport { violations: v }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let g = match name {
            "trivial" => make("trivial", &["e"], &[1], &[&[1]]),
            "Z2" => make("Z2", &["e", "-1"], &[2, 2], &[&[1, 1], &[1, -1]]),
            "Z2xZ2" => make(
                "Z2xZ2",
                &["e", "a", "b", "ab"],
                &[4, 4, 4, 4],
                &[
                    &[1, 1, 1, 1],
                    &[1, -1, 1, -1],
                    &[1, 1, -1, -1],
                    &[1, -1, -1, 1],
                ],
            ),
            "S3" => make(
                "S3",
                &["e", "(12)", "(123)"],
                &[6, 2, 3],
                &[&[1, 1, 1], &[1, -1, 1], &[2, 0, -1]],
            ),
            "S4" => make(
                "S4",
                &["e", "(12)", "(12)(34)", "(123)", "(1234)"],
                &[24, 4, 8, 3, 4],
                &[
                    &[1, 1, 1, 1, 1],
                    &[1, -1, 1, 1, -1],
                    &[2, 0, 2, -1, 0],
                    &[3, 1, -1, 0, -1],
                    &[3, -1, -1, 0, 1],
                ],
            ),
            "D8" => make(
                "D8",
                &["e", "r2", "r", "s", "sr"],
                &[8, 8, 4, 4, 4],
                &DIHEDRAL_QUATERNION_TABLE,
            ),
            "Q8" => make(
                "Q8",
                &["1", "-1", "i", "j", "k"],
                &[8, 8, 4, 4, 4],
                &DIHEDRAL_QUATERNION_TABLE,
            ),
            _ => return Err(Error::UnknownGroup(name.to_string())),
        };
        debug_assert!(g.validate().is_ok(), "builtin {name} is invalid");
        Ok(g)
    }

    /// Parses and validates a group document.
    pub fn load(document: &Value) -> Result<Self> {
        let obj = document
            .as_object()
            .ok_or_else(|| malformed("document is not a JSON object"))?;
        const FIELDS: [&str; 6] = [
            "name",
            "class_labels",
            "centralizer_orders",
            "identity_class",
            "trivial_char",
            "table",
        ];
        for key in obj.keys() {
            if !FIELDS.contains(&key.as_str()) {
                return Err(malformed(format!("unknown field {key:?}")));
            }
        }
        let field = |name: &str| {
            obj.get(name)
                .ok_or_else(|| malformed(format!("missing field {name:?}")))
        };
        let name = field("name")?
            .as_str()
            .ok_or_else(|| malformed("name must be a string"))?
            .to_string();
        let class_labels = field("class_labels")?
            .as_array()
            .ok_or_else(|| malformed("class_labels must be an array"))?
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| malformed(format!("class_labels[{i}] must be a string")))
            })
            .collect::<Result<Vec<_>>>()?;
        let centralizer_orders = field("centralizer_orders")?
            .as_array()
            .ok_or_else(|| malformed("centralizer_orders must be an array"))?
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let at = format!("centralizer_orders[{i}]");
                parse_integer(v, &at)?
                    .to_biguint()
                    .ok_or_else(|| malformed(format!("{at} must be non-negative")))
            })
            .collect::<Result<Vec<_>>>()?;
        let index = |name: &str| -> Result<usize> {
            parse_integer(field(name)?, name)?
                .to_usize()
                .ok_or_else(|| malformed(format!("{name} must be a non-negative index")))
        };
        let identity_class = index("identity_class")?;
        let trivial_char = index("trivial_char")?;
        let table = field("table")?
            .as_array()
            .ok_or_else(|| malformed("table must be an array of rows"))?
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.as_array()
                    .ok_or_else(|| malformed(format!("table[{r}] must be an array")))?
                    .iter()
                    .enumerate()
                    .map(|(c, v)| parse_integer(v, &format!("table[{r}][{c}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let g = GroupData {
            name,
            class_labels,
            centralizer_orders,
            identity_class,
            trivial_char,
            table,
        };
        let report = g.validate();
        if !report.is_ok() {
            return Err(Error::InvalidGroup(report));
        }
        Ok(g)
    }

    pub fn load_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        Self::load(&value)
    }

    pub fn store(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), Value::String(self.name.clone()));
        obj.insert(
            "class_labels".into(),
            Value::Array(
                self.class_labels
                    .iter()
                    .cloned()
                    .map(Value::String)
                    .collect(),
            ),
        );
        obj.insert(
            "centralizer_orders".into(),
            Value::Array(
                self.centralizer_orders
                    .iter()
                    .map(|z| emit_integer(&BigInt::from(z.clone())))
                    .collect(),
            ),
        );
        obj.insert("identity_class".into(), Value::from(self.identity_class));
        obj.insert("trivial_char".into(), Value::from(self.trivial_char));
        obj.insert(
            "table".into(),
            Value::Array(
                self.table
                    .iter()
                    .map(|row| Value::Array(row.iter().map(emit_integer).collect()))
                    .collect(),
            ),
        );
        Value::Object(obj)
    }
}

const DIHEDRAL_QUATERNION_TABLE: [&[i64]; 5] = [
    &[1, 1, 1, 1, 1],
    &[1, 1, 1, -1, -1],
    &[1, 1, -1, 1, -1],
    &[1, 1, -1, -1, 1],
    &[2, -2, 0, 0, 0],
];

fn make(name: &str, labels: &[&str], z: &[u64], table: &[&[i64]]) -> GroupData {
    GroupData {
        name: name.to_string(),
        class_labels: labels.iter().map(|s| s.to_string()).collect(),
        centralizer_orders: z.iter().map(|&x| BigUint::from(x)).collect(),
        identity_class: 0,
        trivial_char: 0,
        table: table
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedGroup(msg.into())
}

/// JSON integer or decimal string.
fn parse_integer(v: &Value, at: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(malformed(format!("{at}: {n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| malformed(format!("{at}: {s:?} is not a decimal integer"))),
        other => Err(malformed(format!(
            "{at}: expected an integer, found {other}"
        ))),
    }
}

const SAFE_JSON_INT: i64 = 1 << 53;

/// JSON number inside the 53-bit range, decimal string outside it.
fn emit_integer(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) if i.abs() < SAFE_JSON_INT => Value::from(i),
        _ => Value::String(x.to_string()),
    }
}
