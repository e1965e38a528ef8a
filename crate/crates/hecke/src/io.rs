//! JSON encodings. Every number is written as a string; on input both
//! strings and JSON numbers are accepted.

use std::fmt::Display;
use std::fs;

use hecke_core::derived::{ChainMap, FiniteComplex, Homotopy};
use hecke_core::modpk::{ModMatrix, PrimePower};
use serde_json::{json, Value};

#[derive(Debug)]
pub struct FormatError(pub String);

impl Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

impl From<hecke_core::Error> for FormatError {
    fn from(e: hecke_core::Error) -> Self {
        FormatError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, FormatError>;

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError(msg.into()))
}

pub fn s<T: Display>(x: T) -> Value {
    Value::String(x.to_string())
}

pub fn strings<T: Display>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(s).collect())
}

/// Reads `arg` as inline JSON when it starts with `{` or `[`, and as a path otherwise.
pub fn load(arg: &str) -> Result<Value> {
    let text = match arg.trim_start().chars().next() {
        Some('{') | Some('[') => arg.to_string(),
        _ => fs::read_to_string(arg).map_err(|e| FormatError(format!("{arg}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| FormatError(format!("invalid JSON: {e}")))
}

pub fn int(v: &Value) -> Result<i64> {
    match v {
        Value::String(t) => t.trim().parse().map_err(|_| FormatError(format!("not an integer: {t:?}"))),
        Value::Number(n) => n.as_i64().ok_or_else(|| FormatError(format!("not an integer: {n}"))),
        other => err(format!("expected an integer, got {other}")),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| FormatError(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| FormatError(format!("`{what}` must be an array")))
}

fn usize_of(v: &Value) -> Result<usize> {
    let k = int(v)?;
    usize::try_from(k).map_err(|_| FormatError(format!("expected a nonnegative integer, got {k}")))
}

pub fn encode_matrix(m: &ModMatrix) -> Value {
    Value::Array(m.row_vecs().into_iter().map(strings).collect())
}

pub fn parse_matrix(v: &Value, ring: PrimePower, rows: usize, cols: usize) -> Result<ModMatrix> {
    let entries = array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(ModMatrix::from_rows_shaped(ring, rows, cols, &entries)?)
}

pub fn encode_complex(c: &FiniteComplex) -> Value {
    let ring = c.ring();
    json!({
        "p": s(ring.p()),
        "exponent": s(ring.exponent()),
        "lo": s(c.lo()),
        "ranks": strings(c.ranks()),
        "d": c.degrees().take(c.len() - 1).map(|i| encode_matrix(&c.d(i))).collect::<Vec<_>>(),
    })
}

pub fn parse_ring(v: &Value) -> Result<PrimePower> {
    let p = int(field(v, "p")?)?;
    let e = int(field(v, "exponent")?)?;
    if p < 2 || !(1..=62).contains(&e) {
        return err(format!("bad ring Z/{p}^{e}"));
    }
    Ok(PrimePower::new(p as u64, e as u32)?)
}

/// `{"p", "exponent", "lo", "ranks", "d"}`, with `d[k]` the differential out of degree `lo + k`.
pub fn parse_complex(v: &Value) -> Result<FiniteComplex> {
    let ring = parse_ring(v)?;
    let lo = v.get("lo").map(int).transpose()?.unwrap_or(0);
    let ranks = array(field(v, "ranks")?, "ranks")?.iter().map(usize_of).collect::<Result<Vec<_>>>()?;
    let ds = array(field(v, "d")?, "d")?;
    if ranks.is_empty() || ds.len() + 1 != ranks.len() {
        return err(format!("{} degrees need {} differentials", ranks.len(), ranks.len().saturating_sub(1)));
    }
    let diffs = ds
        .iter()
        .enumerate()
        .map(|(k, m)| parse_matrix(m, ring, ranks[k + 1], ranks[k]))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteComplex::new(ring, lo, ranks, diffs)?)
}

pub fn encode_chain_map(f: &ChainMap) -> Value {
    json!({ "lo": s(f.lo()), "maps": f.maps().iter().map(encode_matrix).collect::<Vec<_>>() })
}

pub fn encode_homotopy(h: &Homotopy) -> Value {
    Value::Array(h.maps().iter().map(encode_matrix).collect())
}

/// A chain map `source -> target`: `{"maps": [...]}` or a bare list of matrices, one per degree.
pub fn parse_chain_map(v: &Value, source: &FiniteComplex, target: &FiniteComplex) -> Result<ChainMap> {
    let ring = target.ring();
    let maps = match v {
        Value::Array(_) => v,
        _ => field(v, "maps")?,
    };
    let maps = array(maps, "maps")?;
    if maps.len() != source.len() {
        return err(format!("expected {} maps, got {}", source.len(), maps.len()));
    }
    let maps = source
        .degrees()
        .zip(maps)
        .map(|(i, m)| parse_matrix(m, ring, target.rank(i), source.rank(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainMap::checked(source, target, maps)?)
}

/// A list of endomorphisms of `c`.
pub fn parse_endomorphisms(v: &Value, c: &FiniteComplex) -> Result<Vec<ChainMap>> {
    array(v, "ops")?.iter().map(|f| parse_chain_map(f, c, c)).collect()
}

/// `f_k` on `C mod p^k` for `k = 1..N`.
pub fn parse_tower(v: &Value, c: &FiniteComplex) -> Result<Vec<ChainMap>> {
    array(v, "tower")?
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let level = c.reduce_to(k as u32 + 1)?;
            parse_chain_map(f, &level, &level)
        })
        .collect()
}
