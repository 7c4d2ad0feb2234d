//! Bit-exact JSON documents for states and operators. Rationals are written
//! as `"p/q"` strings, never as floats.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{AlgebraSignature, Monomial, State};
use crate::operator::Operator;
use crate::scalar::{parse_rational, rational_to_string, Cq, EpsId, JetScalar, Rational};

pub const FORMAT_VERSION: u64 = 1;

/// Anything that can be written to a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraObject {
    Operator(Operator),
    State(State),
}

impl AlgebraObject {
    pub fn sig(&self) -> AlgebraSignature {
        match self {
            AlgebraObject::Operator(o) => o.sig(),
            AlgebraObject::State(s) => s.sig(),
        }
    }
}

impl From<Operator> for AlgebraObject {
    fn from(o: Operator) -> Self {
        AlgebraObject::Operator(o)
    }
}

impl From<State> for AlgebraObject {
    fn from(s: State) -> Self {
        AlgebraObject::State(s)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    version: u64,
    kind: String,
    n_total: u64,
    #[serde(rename = "n_D")]
    n_d: u64,
    entries: Vec<EntryDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    out: u64,
    #[serde(rename = "in", default, skip_serializing_if = "Option::is_none")]
    inp: Option<u64>,
    re: String,
    im: String,
    #[serde(default)]
    eps: Vec<EpsDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EpsDoc {
    id: String,
    re: String,
    im: String,
}

fn entry(out: Monomial, inp: Option<Monomial>, c: &JetScalar) -> EntryDoc {
    EntryDoc {
        out: out.bits() as u64,
        inp: inp.map(|m| m.bits() as u64),
        re: rational_to_string(&c.body().re),
        im: rational_to_string(&c.body().im),
        eps: c
            .eps_terms()
            .iter()
            .map(|(id, v)| EpsDoc {
                id: id.to_string(),
                re: rational_to_string(&v.re),
                im: rational_to_string(&v.im),
            })
            .collect(),
    }
}

/// Serializes to pretty-printed JSON with entries in canonical order.
pub fn to_json(obj: &AlgebraObject) -> String {
    let sig = obj.sig();
    let (kind, entries) = match obj {
        AlgebraObject::Operator(o) => {
            let mut e: Vec<_> = o.entries().map(|(out, inp, c)| (inp, out, c)).collect();
            e.sort_by_key(|(inp, out, _)| (*inp, *out));
            (
                "operator",
                e.into_iter()
                    .map(|(inp, out, c)| entry(out, Some(inp), c))
                    .collect(),
            )
        }
        AlgebraObject::State(s) => (
            "state",
            s.terms().map(|(m, c)| entry(*m, None, c)).collect(),
        ),
    };
    let doc = Document {
        version: FORMAT_VERSION,
        kind: kind.into(),
        n_total: sig.n_total() as u64,
        n_d: sig.n_d() as u64,
        entries,
    };
    serde_json::to_string_pretty(&doc).expect("documents always serialize")
}

fn rat(s: &str, what: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::MalformedDocument(format!("{what}: `{s}` is not p/q")))
}

fn monomial(bits: u64, sig: AlgebraSignature) -> Result<Monomial> {
    let b = u32::try_from(bits)
        .map_err(|_| Error::MalformedDocument(format!("bitmask {bits} too large")))?;
    sig.check_monomial(Monomial::from_bits(b))
}

fn scalar(e: &EntryDoc) -> Result<JetScalar> {
    let body = Cq::new(rat(&e.re, "re")?, rat(&e.im, "im")?);
    let mut seen = BTreeSet::new();
    let mut terms = Vec::new();
    for t in &e.eps {
        let id: EpsId = t.id.parse().map_err(Error::MalformedDocument)?;
        if !seen.insert(id) {
            return Err(Error::MalformedDocument(format!("repeated ε id {id}")));
        }
        terms.push((id, Cq::new(rat(&t.re, "eps re")?, rat(&t.im, "eps im")?)));
    }
    Ok(JetScalar::from_terms(body, terms))
}

/// Parses and validates a document.
pub fn from_json(text: &str) -> Result<AlgebraObject> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::VersionMismatch(doc.version));
    }
    let sig = AlgebraSignature::new(
        usize::try_from(doc.n_total).unwrap_or(usize::MAX),
        usize::try_from(doc.n_d).unwrap_or(usize::MAX),
    )?;
    let mut positions = BTreeSet::new();
    match doc.kind.as_str() {
        "operator" => {
            let mut triples = Vec::with_capacity(doc.entries.len());
            for e in &doc.entries {
                let inp = e.inp.ok_or_else(|| {
                    Error::MalformedDocument("operator entry without `in`".into())
                })?;
                let (out, inp) = (monomial(e.out, sig)?, monomial(inp, sig)?);
                if !positions.insert((out, inp)) {
                    return Err(Error::MalformedDocument(format!(
                        "repeated entry ({out}, {inp})"
                    )));
                }
                triples.push((out, inp, scalar(e)?));
            }
            Ok(AlgebraObject::Operator(Operator::from_entries(
                sig, triples,
            )?))
        }
        "state" => {
            let mut terms = Vec::with_capacity(doc.entries.len());
            for e in &doc.entries {
                if e.inp.is_some() {
                    return Err(Error::MalformedDocument("state entry with `in`".into()));
                }
                let out = monomial(e.out, sig)?;
                if !positions.insert((out, Monomial::UNIT)) {
                    return Err(Error::MalformedDocument(format!("repeated entry {out}")));
                }
                terms.push((out, scalar(e)?));
            }
            Ok(AlgebraObject::State(State::from_terms(sig, terms)?))
        }
        other => Err(Error::MalformedDocument(format!("unknown kind `{other}`"))),
    }
}

pub fn export_json(obj: &AlgebraObject, path: impl AsRef<Path>) -> std::io::Result<()> {
    fs::write(path, to_json(obj) + "\n")
}

pub fn import_json(path: impl AsRef<Path>) -> Result<AlgebraObject> {
    let text = fs::read_to_string(path.as_ref())
        .map_err(|e| Error::MalformedDocument(format!("{}: {e}", path.as_ref().display())))?;
    from_json(&text)
}
