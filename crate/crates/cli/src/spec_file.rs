//! JSON form descriptions.
//!
//! ```json
//! {"q": {"p": 2, "nu": 1}, "s": 1, "gram": [[1, 0], [0, 1]]}
//! {"q": {"p": 2, "nu": 1}, "preset": {"fermat": {"n": 3}}}
//! {"q": {"p": 3, "nu": 1}, "preset": {"type": {"a": 1, "b": {"2": 1}}}}
//! ```
//!
//! Gram entries are element indices of `F_{q^{2s}}`; `field.modulus`
//! overrides the default defining polynomial (coefficients, constant first).

use std::collections::BTreeMap;
use std::sync::Arc;

use qbic::{Error, FieldDescriptor, FieldElement, FormType, Matrix, QBicForm, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpecFile {
    pub q: PrimePower,
    #[serde(default = "one")]
    pub s: u32,
    #[serde(default)]
    pub field: Option<FieldOverride>,
    #[serde(default)]
    pub gram: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub preset: Option<Preset>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimePower {
    pub p: u64,
    pub nu: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldOverride {
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Preset {
    Fermat { n: usize },
    Type {
        a: usize,
        #[serde(default)]
        b: BTreeMap<String, usize>,
    },
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

impl FormSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let message = e.to_string();
            // serde_json appends the position; keep the bare message
            let message = message
                .rsplit_once(" at line ")
                .map_or(message.as_str(), |(m, _)| m)
                .to_string();
            parse_error(format!("line {}, column {}", e.line(), e.column()), message)
        })
    }

    pub fn q(&self) -> Result<u64> {
        self.q
            .p
            .checked_pow(self.q.nu)
            .filter(|_| self.q.nu >= 1)
            .ok_or_else(|| parse_error("q", "q = p^nu must satisfy nu >= 1 and fit in 64 bits"))
    }

    fn form_type(&self) -> Result<Option<FormType>> {
        let Some(Preset::Type { a, b }) = &self.preset else {
            return Ok(None);
        };
        let mut blocks = Vec::new();
        for (key, &count) in b {
            let m: usize = key
                .parse()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| parse_error(format!("preset.type.b.{key}"), "block sizes are positive integers"))?;
            blocks.push((m, count));
        }
        Ok(Some(FormType::new(*a, blocks)))
    }

    fn gram_matrix(&self) -> Result<Matrix> {
        match (&self.gram, &self.preset) {
            (Some(_), Some(_)) => Err(parse_error("gram/preset", "give exactly one of gram and preset")),
            (None, None) => Err(parse_error("gram/preset", "one of gram and preset is required")),
            (Some(rows), None) => {
                let n = rows.len();
                if n == 0 {
                    return Err(parse_error("gram", "the Gram matrix is empty"));
                }
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != n {
                        return Err(parse_error(
                            format!("gram[{i}]"),
                            format!("row has {} entries, expected {n}", row.len()),
                        ));
                    }
                }
                let data = rows.iter().flatten().map(|&x| FieldElement(x)).collect();
                Ok(Matrix::from_flat(n, n, data))
            }
            (None, Some(Preset::Fermat { n })) => Ok(Matrix::identity(n + 1)),
            (None, Some(Preset::Type { .. })) => {
                let ty = self.form_type()?.expect("type preset");
                if ty.dim() == 0 {
                    return Err(parse_error("preset.type", "the type has dimension 0"));
                }
                Ok(qbic::form::type_gram(&ty))
            }
        }
    }

    /// Builds the field `F_{q^{2s}}` and the form.
    pub fn build(&self) -> Result<QBicForm> {
        let q = self.q()?;
        if self.s == 0 {
            return Err(parse_error("s", "s must be at least 1"));
        }
        let e = 2 * self.q.nu * self.s;
        let modulus = self.field.as_ref().map(|f| f.modulus.as_slice());
        let field = Arc::new(FieldDescriptor::new(self.q.p, e, modulus)?);
        let gram = self.gram_matrix()?;
        if let Some((i, x)) = gram.data().iter().enumerate().find(|(_, x)| x.index() as u64 >= field.order()) {
            let n = gram.cols();
            return Err(parse_error(
                format!("gram[{}][{}]", i / n, i % n),
                format!("{} is not an element index of GF({})", x.index(), field.order()),
            ));
        }
        QBicForm::new(q, field, gram)
    }
}
