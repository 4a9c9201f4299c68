//! JSON form of a configuration:
//! `{"field": "Q" | {"Fp": p}, "d": 2, "n": 6, "columns": [[…], …]}`.
//! Rational scalars are strings such as `"3/4"`; residues are integers.
//! Both spellings are accepted on input.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::PointConfiguration;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};

/// Version tag carried by every JSON document this crate writes.
pub const SCHEMA: &str = "veronese-kit/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// How the configuration was produced, if it was sampled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub field: FieldSpec,
    pub d: usize,
    pub n: usize,
    pub columns: Vec<Vec<Value>>,
}

fn scalar_to_json<F: Field>(field: &F, x: &F::Elem) -> Value {
    let text = field.to_text(x);
    match field.spec() {
        FieldSpec::PrimeField(_) => text.parse::<u64>().map(Value::from).unwrap_or(Value::String(text)),
        FieldSpec::Rationals => Value::String(text),
    }
}

fn scalar_from_json<F: Field>(field: &F, v: &Value) -> Result<F::Elem> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(num) => field.parse(&num.to_string()),
        other => Err(Error::ParseScalar(other.to_string())),
    }
}

impl ConfigDocument {
    pub fn from_config<F: Field>(p: &PointConfiguration<F>) -> Self {
        let f = p.field();
        ConfigDocument {
            schema: Some(SCHEMA.to_string()),
            source: None,
            seed: None,
            field: f.spec(),
            d: p.d(),
            n: p.n(),
            columns: p.points().iter().map(|c| c.iter().map(|x| scalar_to_json(f, x)).collect()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Precondition(format!("configuration JSON: {e}")))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Reads the columns over `field`, which need not be the document's own
    /// field (integer data can be reread over any field).
    pub fn read_over<F: Field>(&self, field: &F) -> Result<PointConfiguration<F>> {
        if self.columns.len() != self.n {
            return Err(Error::Shape(format!("n = {} but {} columns given", self.n, self.columns.len())));
        }
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, col)| {
                col.iter()
                    .map(|v| scalar_from_json(field, v))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::Precondition(format!("column {}: {e}", j + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        PointConfiguration::new(field, self.d, columns)
    }

    /// Reads the columns over the field the document names.
    pub fn read(&self) -> Result<AnyConfiguration> {
        match self.field {
            FieldSpec::Rationals => self.read_over(&Rationals).map(AnyConfiguration::Rational),
            FieldSpec::PrimeField(p) => self.read_over(&PrimeField::new(p)?).map(AnyConfiguration::Prime),
        }
    }
}

/// A configuration over whichever field a document named.
#[derive(Debug, Clone)]
pub enum AnyConfiguration {
    Rational(PointConfiguration<Rationals>),
    Prime(PointConfiguration<PrimeField>),
}

impl AnyConfiguration {
    pub fn document(&self) -> ConfigDocument {
        match self {
            AnyConfiguration::Rational(p) => ConfigDocument::from_config(p),
            AnyConfiguration::Prime(p) => ConfigDocument::from_config(p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{SampleRecipe, Sampler};

    #[test]
    fn round_trip_over_both_fields() {
        let q = Rationals;
        let p = Sampler::new(&q, SampleRecipe::new(1)).generic(3, 7);
        let scaled = p.rescale(&vec![q.parse("2/3").unwrap(); 7]).unwrap();
        let doc = ConfigDocument::from_config(&scaled);
        let text = doc.to_json_pretty();
        assert!(text.contains("\"Q\""));
        let back = ConfigDocument::from_json(&text).unwrap().read_over(&q).unwrap();
        assert!(back.same_points(&p));

        let f = PrimeField::default();
        let p = Sampler::new(&f, SampleRecipe::new(2)).rnc(2, 6).unwrap();
        let text = ConfigDocument::from_config(&p).to_json_pretty();
        assert!(text.contains("\"Fp\": 65521"));
        match ConfigDocument::from_json(&text).unwrap().read().unwrap() {
            AnyConfiguration::Prime(back) => assert_eq!(back.coords(), p.coords()),
            AnyConfiguration::Rational(_) => panic!("wrong field"),
        }
    }

    #[test]
    fn mixed_scalar_spellings_are_accepted() {
        let text = r#"{"field": "Q", "d": 1, "n": 2, "columns": [[1, "1/2"], ["-3", 0]]}"#;
        let p = ConfigDocument::from_json(text).unwrap().read_over(&Rationals).unwrap();
        assert_eq!(Rationals.to_text(&p.coords()[(1, 0)]), "1/2");
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(ConfigDocument::from_json("{").is_err());
        let zero = r#"{"field": "Q", "d": 1, "n": 1, "columns": [[0, 0]]}"#;
        assert_eq!(
            ConfigDocument::from_json(zero).unwrap().read().unwrap_err(),
            Error::DegeneratePoint { index: 1 }
        );
        let bad = r#"{"field": {"Fp": 15}, "d": 1, "n": 1, "columns": [[1, 0]]}"#;
        assert!(matches!(ConfigDocument::from_json(bad).unwrap().read(), Err(Error::InvalidField(_))));
        let junk = r#"{"field": "Q", "d": 1, "n": 1, "columns": [[true, 0]]}"#;
        assert!(ConfigDocument::from_json(junk).unwrap().read().is_err());
    }
}
