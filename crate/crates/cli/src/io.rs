use crate::error::CliError;
use isoterm_core::monoids::{dilworth, direct_product, preset, FiniteMonoid, MonoidDoc};
use isoterm_core::{parse_word, Word};
use std::fs;
use std::io::Write;
use std::path::Path;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// One word per line; blank lines and text after `#` are ignored.
pub fn parse_word_list(text: &str) -> Result<Vec<Word>, CliError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if !line.is_empty() {
            out.push(parse_word(line)?);
        }
    }
    Ok(out)
}

pub fn read_word_list(path: &Path) -> Result<Vec<Word>, CliError> {
    parse_word_list(&read_text(path)?)
}

pub fn parse_word_csv(text: &str) -> Result<Vec<Word>, CliError> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| Ok(parse_word(s)?)).collect()
}

pub fn load_doc(path: &Path) -> Result<FiniteMonoid, CliError> {
    let doc: MonoidDoc =
        serde_json::from_str(&read_text(path)?).map_err(|source| CliError::Json { path: path.into(), source })?;
    Ok(FiniteMonoid::from_doc(&doc)?)
}

fn split_factors(spec: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in spec.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(spec[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(spec[start..].trim());
    out
}

fn load_factor(spec: &str) -> Result<FiniteMonoid, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        return load_doc(path);
    }
    if let Some(inner) = spec.strip_prefix("S(").and_then(|s| s.strip_suffix(')')) {
        return Ok(dilworth(&parse_word_csv(inner)?)?);
    }
    if spec.ends_with(".json") {
        return Err(CliError::io(path, std::io::Error::new(std::io::ErrorKind::NotFound, "no such file")));
    }
    Ok(preset(spec)?)
}

/// A JSON file, a preset name, `S(w1,w2,...)`, or such factors joined by `*`.
pub fn load_monoid(spec: &str) -> Result<FiniteMonoid, CliError> {
    if Path::new(spec).is_file() {
        return load_doc(Path::new(spec));
    }
    let mut factors = split_factors(spec).into_iter();
    let first = factors.next().filter(|s| !s.is_empty()).ok_or_else(|| CliError::usage("empty monoid spec"))?;
    let mut m = load_factor(first)?;
    for f in factors {
        m = direct_product(&m, &load_factor(f)?)?;
    }
    Ok(m)
}

/// Writes `text` to `path`, where `-` means standard output.
pub fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    if path == Path::new("-") {
        let mut out = std::io::stdout().lock();
        return out.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e));
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}
