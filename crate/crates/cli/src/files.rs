//! Group and scenario files.

use std::ops::Range;
use std::path::Path;
use std::sync::Arc;

use carnot_core::derham::PolyForm;
use carnot_core::fiber::covector;
use carnot_core::lie::{AlgebraSpec, Bracket, StratifiedAlgebra};
use carnot_core::scalar::parse_rational;
use carnot_core::{groups, FiberForm, WeightedPoly};
use serde::Deserialize;
use toml::Spanned;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Located { path: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

struct Source {
    path: String,
    text: String,
}

impl Source {
    fn read(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Ok(Source { path: path.display().to_string(), text })
    }

    fn at(&self, span: Range<usize>, message: impl Into<String>) -> InputError {
        let (line, column) = line_col(&self.text, span.start);
        InputError::Located { path: self.path.clone(), line, column, message: message.into() }
    }

    fn parse<T: serde::de::DeserializeOwned>(&self) -> Result<T, InputError> {
        toml::from_str(&self.text).map_err(|e| {
            let message = e.message().to_string();
            match e.span() {
                Some(span) => self.at(span, message),
                None => InputError::Invalid(format!("{}: {message}", self.path)),
            }
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// `[k, "c"]`: coefficient `c` on `X_k`.
    pub terms: Vec<(usize, String)>,
}

/// Basis indices are 1-based throughout.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub dimension: usize,
    /// Inclusive index ranges; the `m`-th range has weight `m`.
    pub layers: Vec<Spanned<(usize, usize)>>,
    #[serde(default)]
    pub brackets: Vec<Spanned<BracketEntry>>,
    pub labels: Option<Vec<String>>,
    pub coframe: Option<Vec<String>>,
    pub coordinates: Option<Vec<String>>,
    /// Accept a graded algebra whose first layer does not generate.
    #[serde(default)]
    pub homogeneous: bool,
}

/// A loaded algebra and whether non-stratified gradings were declared acceptable.
#[derive(Clone, Debug)]
pub struct Group {
    pub algebra: Arc<StratifiedAlgebra>,
    pub homogeneous: bool,
}

pub fn load_group(path: &Path) -> Result<Group, InputError> {
    let src = Source::read(path)?;
    let file: GroupFile = src.parse()?;
    let n = file.dimension;
    let mut weights = vec![0u32; n];
    let mut next = 1;
    for (m, layer) in file.layers.iter().enumerate() {
        let (a, b) = *layer.get_ref();
        if a != next || b < a || b > n {
            return Err(src.at(layer.span(), format!("layer {} must start at {next} and end by {n}", m + 1)));
        }
        for w in &mut weights[a - 1..b] {
            *w = m as u32 + 1;
        }
        next = b + 1;
    }
    if next != n + 1 {
        return Err(InputError::Invalid(format!("{}: layers cover {} of {n} basis vectors", src.path, next - 1)));
    }
    let mut brackets = Vec::new();
    for entry in &file.brackets {
        let span = entry.span();
        let b = entry.get_ref();
        let index = |k: usize| -> Result<usize, InputError> {
            if k == 0 || k > n {
                return Err(src.at(span.clone(), format!("index {k} out of range 1..={n}")));
            }
            Ok(k - 1)
        };
        let (i, j) = (index(b.i)?, index(b.j)?);
        if i == j {
            return Err(src.at(span.clone(), format!("bracket [X{}, X{}] of a vector with itself", b.i, b.j)));
        }
        let mut terms = Vec::new();
        for (k, c) in &b.terms {
            let c = parse_rational(c).ok_or_else(|| src.at(span.clone(), format!("not a rational: {c:?}")))?;
            terms.push((index(*k)?, c));
        }
        brackets.push(Bracket { i, j, terms });
    }
    let spec = AlgebraSpec {
        name: file.name,
        weights,
        brackets,
        labels: file.labels,
        coframe: file.coframe,
        coordinates: file.coordinates,
    };
    let algebra = StratifiedAlgebra::new(spec).map_err(|e| InputError::Invalid(format!("{}: {e}", src.path)))?;
    Ok(Group { algebra: Arc::new(algebra), homogeneous: file.homogeneous })
}

pub fn builtin(name: &str) -> Option<Group> {
    let (algebra, homogeneous) = match name {
        "heisenberg" | "h1" => (groups::heisenberg(), false),
        "h1xR" => (groups::h1_x_r(), false),
        "r2" => (groups::abelian(2), false),
        "r3" => (groups::abelian(3), false),
        "nonstrat5" => (groups::nonstrat5(), true),
        "engel" => (groups::engel(), false),
        _ => return None,
    };
    Some(Group { algebra, homogeneous })
}

/// A builtin name, or a path relative to `base`.
pub fn resolve_group(reference: &str, base: &Path) -> Result<Group, InputError> {
    if let Some(g) = builtin(reference) {
        return Ok(g);
    }
    let path = base.join(reference);
    if !path.exists() {
        return Err(InputError::Invalid(format!("unknown group {reference:?} (not a builtin, no file {})", path.display())));
    }
    load_group(&path)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    /// 1-based coframe indices.
    pub covector: Vec<usize>,
    pub coefficient: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub name: Option<String>,
    pub terms: Vec<TermEntry>,
    #[serde(default)]
    pub pages: Vec<usize>,
    /// `witnesses[j-1] = z_{p+j}`, each a list of terms.
    pub witnesses: Option<Vec<Vec<TermEntry>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub description: Option<String>,
    pub source: String,
    pub target: Option<String>,
    pub map: Option<Vec<String>>,
    #[serde(default)]
    pub forms: Vec<FormEntry>,
    /// Left-invariant 2-form on the target (the source when there is no target).
    pub cocycle: Option<Vec<TermEntry>>,
    pub source_cocycle: Option<Vec<TermEntry>>,
    pub coeff_degree: Option<u32>,
}

#[derive(Debug)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub source: Group,
    pub target: Group,
}

pub fn load_scenario(path: &Path) -> Result<Scenario, InputError> {
    let src = Source::read(path)?;
    let file: ScenarioFile = src.parse()?;
    let base = path.parent().unwrap_or(Path::new("."));
    let source = resolve_group(&file.source, base)?;
    let target = match &file.target {
        Some(t) => resolve_group(t, base)?,
        None => source.clone(),
    };
    Ok(Scenario { file, source, target })
}

pub fn parse_form(alg: &StratifiedAlgebra, terms: &[TermEntry]) -> Result<PolyForm, InputError> {
    let n = alg.dim();
    let mut out = PolyForm::zero();
    for t in terms {
        if let Some(&k) = t.covector.iter().find(|&&k| k == 0 || k > n) {
            return Err(InputError::Invalid(format!("covector index {k} out of range 1..={n}")));
        }
        let mut idx: Vec<usize> = t.covector.iter().map(|k| k - 1).collect();
        let inversions = (0..idx.len()).flat_map(|a| (a + 1..idx.len()).map(move |b| (a, b)));
        let sign = inversions.filter(|&(a, b)| idx[a] > idx[b]).count() % 2 == 1;
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let f = WeightedPoly::parse(&t.coefficient, alg.coords())
            .map_err(|e| InputError::Invalid(format!("coefficient {:?}: {e}", t.coefficient)))?;
        out.add_term(covector(&idx), if sign { -&f } else { f });
    }
    Ok(out)
}

pub fn parse_invariant(alg: &StratifiedAlgebra, terms: &[TermEntry]) -> Result<FiberForm, InputError> {
    let f = parse_form(alg, terms)?;
    carnot_core::derham::as_invariant(&f)
        .ok_or_else(|| InputError::Invalid("cocycle coefficients must be constants".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_to_line_and_column() {
        let text = "a = 1\nbb = 2\n";
        assert_eq!(line_col(text, 0), (1, 1));
        assert_eq!(line_col(text, 6), (2, 1));
        assert_eq!(line_col(text, 9), (2, 4));
    }
}
