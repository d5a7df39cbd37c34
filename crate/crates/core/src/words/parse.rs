use super::{Identity, Variable, Word, WordError};
use alloc::string::String;
use alloc::vec::Vec;

const MAX_LEN: usize = 1 << 20;

/// Parses a word such as `x y1 y1 x`, `xyyx` or `x^3 t1 x`.
///
/// A whitespace-separated chunk is either one token (`t12`, `x^3`) or a run
/// of single letters each optionally raised to a power (`xy^2x`). The lone
/// chunk `1` is the empty word.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(WordError::EmptyInput);
    }
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        if chunk == "1" {
            continue;
        }
        match single_token(chunk)? {
            Some((x, k)) => push_power(&mut out, x, k, chunk)?,
            None => letter_run(chunk, &mut out)?,
        }
    }
    Ok(Word::new(out))
}

/// Parses `lhs = rhs` (the separator may also be `≈`).
pub fn parse_identity(text: &str) -> Result<Identity, WordError> {
    let parts: Vec<&str> = text.split(['=', '≈']).collect();
    if parts.len() != 2 {
        return Err(WordError::MissingSeparator(String::from(text.trim())));
    }
    Ok(Identity::new(parse_word(parts[0])?, parse_word(parts[1])?))
}

fn push_power(out: &mut Vec<Variable>, x: Variable, k: usize, chunk: &str) -> Result<(), WordError> {
    if out.len() + k > MAX_LEN {
        return Err(WordError::TooLong(String::from(chunk)));
    }
    out.extend(core::iter::repeat_n(x, k));
    Ok(())
}

fn exponent(digits: &str, chunk: &str) -> Result<usize, WordError> {
    let digits = digits.strip_prefix('{').and_then(|d| d.strip_suffix('}')).unwrap_or(digits);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(WordError::MalformedToken(String::from(chunk)));
    }
    let k: usize = digits.parse().map_err(|_| WordError::TooLong(String::from(chunk)))?;
    if k == 0 {
        return Err(WordError::ZeroExponent(String::from(chunk)));
    }
    Ok(k)
}

fn single_token(chunk: &str) -> Result<Option<(Variable, usize)>, WordError> {
    let (base, k) = match chunk.split_once('^') {
        Some((b, e)) => (b, Some(e)),
        None => (chunk, None),
    };
    let Ok(x) = Variable::parse(base) else {
        return Ok(None);
    };
    let k = match k {
        Some(e) => exponent(e, chunk)?,
        None => 1,
    };
    Ok(Some((x, k)))
}

fn letter_run(chunk: &str, out: &mut Vec<Variable>) -> Result<(), WordError> {
    let bad = || WordError::MalformedToken(String::from(chunk));
    let bytes = chunk.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let x = Variable::new(bytes[i] as char).map_err(|_| bad())?;
        i += 1;
        let mut k = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            let start = i + 1;
            let mut end = start;
            if end < bytes.len() && bytes[end] == b'{' {
                while end < bytes.len() && bytes[end] != b'}' {
                    end += 1;
                }
                end = (end + 1).min(bytes.len());
            } else {
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
            }
            k = exponent(&chunk[start..end], chunk)?;
            i = end;
        } else if i < bytes.len() && !bytes[i].is_ascii_alphabetic() {
            return Err(bad());
        }
        push_power(out, x, k, chunk)?;
    }
    Ok(())
}
