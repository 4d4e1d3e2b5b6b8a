//! Built-in triangulations and the manifold expression grammar
//! `name | name(k) | product(expr,expr) | union(expr,expr) | file:<path>`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{circle_facets, sphere_facets, SimplicialComplex};

/// Environment variable naming a directory that replaces the shipped facet data.
pub const DATA_DIR_ENV: &str = "GDS_DATA_DIR";

/// On-disk facet list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetFile {
    pub name: String,
    pub facets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldRecord {
    pub name: String,
    pub complex: SimplicialComplex,
    pub expected_f_vector: Option<Vec<usize>>,
}

struct Shipped {
    name: &'static str,
    json: &'static str,
    f_vector: &'static [usize],
}

const SHIPPED: &[Shipped] = &[
    Shipped { name: "rp2_6", json: include_str!("../data/rp2_6.json"), f_vector: &[6, 15, 10] },
    Shipped { name: "torus_7", json: include_str!("../data/torus_7.json"), f_vector: &[7, 21, 14] },
    Shipped { name: "klein_8", json: include_str!("../data/klein_8.json"), f_vector: &[8, 24, 16] },
    Shipped { name: "rp3_11", json: include_str!("../data/rp3_11.json"), f_vector: &[11, 51, 80, 40] },
    Shipped { name: "cp2_9", json: include_str!("../data/cp2_9.json"), f_vector: &[9, 36, 84, 90, 36] },
];

/// Names of the data-backed built-ins.
pub fn shipped_names() -> Vec<&'static str> {
    SHIPPED.iter().map(|s| s.name).collect()
}

/// A representative list of catalog entries, including parametrized ones.
pub fn catalog_listing() -> Vec<String> {
    let mut out: Vec<String> = vec!["circle(3)".into(), "circle(4)".into(), "circle(5)".into()];
    out.extend((1..=4).map(|d| format!("sphere({d})")));
    out.extend(shipped_names().into_iter().map(String::from));
    out.push("product(sphere(2),rp2_6)".into());
    out
}

impl ManifoldRecord {
    /// Validates the closed-manifold conditions and the expected f-vector.
    pub fn new(name: String, complex: SimplicialComplex, expected_f_vector: Option<Vec<usize>>) -> Result<Self> {
        let check = complex.check_closed_manifold();
        if !check.is_closed_manifold {
            return Err(Error::NotAManifold(format!("{name}: {}", check.diagnostic.unwrap_or_default())));
        }
        if let Some(expected) = &expected_f_vector {
            let found = complex.f_vector();
            if &found != expected {
                return Err(Error::FacetFile(format!(
                    "{name}: f-vector {found:?} differs from expected {expected:?}"
                )));
            }
        }
        Ok(Self { name, complex, expected_f_vector })
    }
}

fn from_facet_json(text: &str, origin: &str) -> Result<FacetFile> {
    serde_json::from_str(text).map_err(|e| Error::FacetFile(format!("{origin}: {e}")))
}

/// Reads a facet file from disk.
pub fn load_facet_file(path: &Path) -> Result<ManifoldRecord> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::FacetFile(format!("{}: {e}", path.display())))?;
    let file = from_facet_json(&text, &path.display().to_string())?;
    let complex = SimplicialComplex::from_facets(&file.facets)?;
    ManifoldRecord::new(file.name, complex, None)
}

fn shipped(name: &str) -> Result<ManifoldRecord> {
    let entry = SHIPPED
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownManifold(name.to_string()))?;
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let path = Path::new(&dir).join(format!("{name}.json"));
        let mut rec = load_facet_file(&path)?;
        rec.name = name.to_string();
        return Ok(rec);
    }
    let file = from_facet_json(entry.json, name)?;
    let complex = SimplicialComplex::from_facets(&file.facets)?;
    ManifoldRecord::new(name.to_string(), complex, Some(entry.f_vector.to_vec()))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A named built-in: `circle(m)` (m ≥ 3), `sphere(d)` (d ≥ 1) or a shipped name.
pub fn builtin(name: &str) -> Result<ManifoldRecord> {
    parse_manifold(name)
}

/// Parses and builds a manifold expression.
pub fn parse_manifold(expr: &str) -> Result<ManifoldRecord> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser { text: &compact, pos: 0, original: expr };
    let rec = parser.expr()?;
    if parser.pos != compact.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(rec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    original: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::UnknownManifold(format!("{} ({what} at offset {})", self.original, self.pos))
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {token:?}")))
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        self.pos += len;
        &self.text[start..start + len]
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.ident().to_string();
        digits.parse().map_err(|_| self.error("expected a number"))
    }

    fn expr(&mut self) -> Result<ManifoldRecord> {
        if self.eat("file:") {
            let start = self.pos;
            let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
            self.pos += len;
            return load_facet_file(Path::new(&self.text[start..start + len]));
        }
        let name = self.ident().to_string();
        match name.as_str() {
            "product" | "union" => {
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                let label = format!("{name}({},{})", a.name, b.name);
                let complex = if name == "product" {
                    a.complex.product(&b.complex)
                } else {
                    a.complex.disjoint_union(&b.complex)?
                };
                ManifoldRecord::new(label, complex, None)
            }
            "circle" | "sphere" => {
                self.expect("(")?;
                let k = self.number()?;
                self.expect(")")?;
                let label = format!("{name}({k})");
                if name == "circle" {
                    if k < 3 {
                        return Err(Error::UnknownManifold(format!("{label}: circle needs at least 3 vertices")));
                    }
                    let complex = SimplicialComplex::from_facets(&circle_facets(k))?;
                    ManifoldRecord::new(label, complex, Some(vec![k, k]))
                } else {
                    if k < 1 {
                        return Err(Error::UnknownManifold(format!("{label}: sphere dimension must be at least 1")));
                    }
                    let complex = SimplicialComplex::from_facets(&sphere_facets(k))?;
                    let f = (0..=k).map(|i| binomial(k + 2, i + 1)).collect();
                    ManifoldRecord::new(label, complex, Some(f))
                }
            }
            "" => Err(self.error("expected a manifold name")),
            other => shipped(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_data_loads_with_expected_f_vectors() {
        for name in shipped_names() {
            let rec = builtin(name).unwrap();
            assert_eq!(rec.complex.f_vector(), rec.expected_f_vector.clone().unwrap(), "{name}");
        }
    }

    #[test]
    fn parametrized_builtins() {
        assert_eq!(builtin("sphere(2)").unwrap().complex.f_vector(), vec![4, 6, 4]);
        assert_eq!(builtin("circle(5)").unwrap().complex.f_vector(), vec![5, 5]);
        assert!(matches!(builtin("circle(2)"), Err(Error::UnknownManifold(_))));
        assert!(matches!(builtin("sphere(0)"), Err(Error::UnknownManifold(_))));
        assert!(matches!(builtin("nope"), Err(Error::UnknownManifold(_))));
        assert!(matches!(builtin("circle(3"), Err(Error::UnknownManifold(_))));
        assert!(matches!(builtin("circle(3)x"), Err(Error::UnknownManifold(_))));
    }

    #[test]
    fn compound_expressions() {
        let p = parse_manifold("product( circle(3), circle(3) )").unwrap();
        assert_eq!(p.name, "product(circle(3),circle(3))");
        assert_eq!(p.complex.f_vector(), vec![9, 27, 18]);
        let u = parse_manifold("union(sphere(2),sphere(2))").unwrap();
        assert_eq!(u.complex.num_components(), 2);
    }
}
