//! JSON encodings of the algebra types.
//!
//! Scalars are `"num/den"` strings, words are arrays of letter names taken
//! from the object's `alphabet`. Keys are emitted in sorted order, so equal
//! values always serialize to equal bytes.

use std::fmt;

use brunlie_core::braids::{BraidWord, FreeGroupWord, NTrivialityReport};
use brunlie_core::dkho::{CombedBasis, CombedLie, GradedSubspace};
use brunlie_core::dmr::{Composition, YTensor};
use brunlie_core::emergent::KrvAuditRow;
use brunlie_core::freelie::lie_coords;
use brunlie_core::krv::{KrvReport, SpanConvention, TangentialDerivation};
use brunlie_core::linalg::{to_dense, Echelon, SVec};
use brunlie_core::ncalg::{CyclicPoly, TensorPoly, Word};
use brunlie_core::pentagon::{AuditRow, PentFlavor, SolutionSpace};
use brunlie_core::{LieElement, LinComb, NCPoly, Scalar};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

impl From<brunlie_core::Error> for FormatError {
    fn from(e: brunlie_core::Error) -> Self {
        FormatError(e.to_string())
    }
}

pub type FResult<T> = Result<T, FormatError>;

fn err<T>(msg: impl Into<String>) -> FResult<T> {
    Err(FormatError(msg.into()))
}

fn field<'a>(v: &'a Value, key: &str) -> FResult<&'a Value> {
    v.get(key)
        .ok_or_else(|| FormatError(format!("missing field `{}`", key)))
}

fn array<'a>(v: &'a Value, what: &str) -> FResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| FormatError(format!("`{}` must be an array", what)))
}

fn uint(v: &Value, what: &str) -> FResult<u64> {
    v.as_u64()
        .ok_or_else(|| FormatError(format!("`{}` must be a non-negative integer", what)))
}

fn small(v: &Value, what: &str) -> FResult<u8> {
    u8::try_from(uint(v, what)?).map_err(|_| FormatError(format!("`{}` is too large", what)))
}

// ---------------------------------------------------------------------------
// scalars and words

pub fn scalar(c: &Scalar) -> Value {
    Value::String(c.to_fraction_string())
}

/// Accepts `"num/den"`, `"n"` or a JSON integer.
pub fn parse_scalar(v: &Value) -> FResult<Scalar> {
    match v {
        Value::String(s) => s
            .parse()
            .map_err(|_| FormatError(format!("bad rational `{}`", s))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::from_int(i)),
            None => err(format!(
                "non-integer number {}; write rationals as strings",
                n
            )),
        },
        _ => err("coefficient must be a string or integer"),
    }
}

/// `x0, x1, …`
pub fn default_alphabet(rank: u8) -> Vec<String> {
    (0..rank).map(|i| format!("x{}", i)).collect()
}

/// `t1s, …, t(s-1)s`: the letters of component `s` of a combed element.
pub fn strand_alphabet(s: u8) -> Vec<String> {
    (1..s).map(|i| format!("t{}{}", i, s)).collect()
}

fn word(w: &[u8], alphabet: &[String]) -> Value {
    Value::Array(
        w.iter()
            .map(|&l| Value::String(alphabet[l as usize].clone()))
            .collect(),
    )
}

fn parse_word(v: &Value, alphabet: &[String]) -> FResult<Word> {
    array(v, "word")?
        .iter()
        .map(|l| match l {
            Value::String(s) => alphabet
                .iter()
                .position(|a| a == s)
                .map(|i| i as u8)
                .ok_or_else(|| FormatError(format!("letter `{}` not in the alphabet", s))),
            Value::Number(_) => {
                let i = small(l, "letter")?;
                if (i as usize) < alphabet.len() {
                    Ok(i)
                } else {
                    err(format!("letter index {} out of range", i))
                }
            }
            _ => err("letters are strings or indices"),
        })
        .collect()
}

fn parse_alphabet(v: &Value) -> FResult<Vec<String>> {
    let a: Vec<String> = array(field(v, "alphabet")?, "alphabet")?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| FormatError("alphabet entries are strings".into()))
        })
        .collect::<FResult<_>>()?;
    if a.len() > u8::MAX as usize {
        return err("alphabet too large");
    }
    for (i, s) in a.iter().enumerate() {
        if a[..i].contains(s) {
            return err(format!("repeated letter `{}`", s));
        }
    }
    Ok(a)
}

fn terms(lc: &LinComb<Word>, alphabet: &[String], key: &str) -> Value {
    Value::Array(
        lc.iter()
            .map(|(w, c)| json!({ key: word(w, alphabet), "coeff": scalar(c) }))
            .collect(),
    )
}

fn parse_terms(
    v: &Value,
    alphabet: &[String],
    list: &str,
    key: &str,
) -> FResult<Vec<(Word, Scalar)>> {
    array(field(v, list)?, list)?
        .iter()
        .map(|t| {
            Ok((
                parse_word(field(t, key)?, alphabet)?,
                parse_scalar(field(t, "coeff")?)?,
            ))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// polynomials and Lie elements

pub fn ncpoly(p: &NCPoly) -> Value {
    ncpoly_with(p, &default_alphabet(p.rank()))
}

pub fn ncpoly_with(p: &NCPoly, alphabet: &[String]) -> Value {
    json!({ "alphabet": alphabet, "terms": terms(p.terms(), alphabet, "word") })
}

pub fn parse_ncpoly(v: &Value) -> FResult<NCPoly> {
    let a = parse_alphabet(v)?;
    Ok(NCPoly::try_from_terms(
        a.len() as u8,
        parse_terms(v, &a, "terms", "word")?,
    )?)
}

pub fn cyclic(c: &CyclicPoly, rank: u8) -> Value {
    let a = default_alphabet(rank);
    json!({ "alphabet": a, "cyclic": true, "terms": terms(c, &a, "word") })
}

/// Returns the rank and the cyclic words, each brought to its canonical rotation.
pub fn parse_cyclic(v: &Value) -> FResult<(u8, CyclicPoly)> {
    if field(v, "cyclic")?.as_bool() != Some(true) {
        return err("`cyclic` must be true");
    }
    let a = parse_alphabet(v)?;
    let mut out = CyclicPoly::new();
    for (w, c) in parse_terms(v, &a, "terms", "word")? {
        out.add_term(brunlie_core::ncalg::cyclic_canon(&w), c);
    }
    Ok((a.len() as u8, out))
}

pub fn lie(e: &LieElement) -> Value {
    lie_with(e, &default_alphabet(e.rank()))
}

pub fn lie_with(e: &LieElement, alphabet: &[String]) -> Value {
    json!({ "alphabet": alphabet, "coords": terms(e.coords(), alphabet, "lyndon") })
}

pub fn parse_lie(v: &Value) -> FResult<LieElement> {
    let a = parse_alphabet(v)?;
    let coords: LinComb<Word> = parse_terms(v, &a, "coords", "lyndon")?
        .into_iter()
        .collect();
    Ok(LieElement::from_coords(a.len() as u8, coords)?)
}

pub fn combed(g: &CombedLie) -> Value {
    let comps: Vec<Value> = (2..=g.n())
        .map(|s| {
            let a = strand_alphabet(s);
            let e = lie_coords(g.component(s)).expect("combed components are Lie");
            json!({ "strand": s, "alphabet": a, "coords": terms(e.coords(), &a, "lyndon") })
        })
        .collect();
    json!({ "n": g.n(), "components": comps })
}

pub fn parse_combed(v: &Value) -> FResult<CombedLie> {
    let n = small(field(v, "n")?, "n")?;
    if n == 0 {
        return err("`n` must be positive");
    }
    let mut comps: Vec<NCPoly> = (2..=n).map(|s| NCPoly::zero(s - 1)).collect();
    for c in array(field(v, "components")?, "components")? {
        let s = small(field(c, "strand")?, "strand")?;
        if s < 2 || s > n {
            return err(format!("component {} outside 2..={}", s, n));
        }
        let e = parse_lie(c)?;
        if e.rank() != s - 1 {
            return err(format!("component {} needs {} letters", s, s - 1));
        }
        comps[(s - 2) as usize] = e.to_ncpoly();
    }
    Ok(CombedLie::from_components(n, comps)?)
}

// ---------------------------------------------------------------------------
// subspaces

fn matrix(rows: &[SVec], dim: usize) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(to_dense(r, dim).iter().map(scalar).collect()))
            .collect(),
    )
}

pub fn subspace(sub: &GradedSubspace, ambient_dim: usize) -> Value {
    json!({
        "n": sub.n,
        "degree": sub.degree,
        "ambient_dim": ambient_dim,
        "dim": sub.dim(),
        "rows": matrix(&sub.canonical_rows(), ambient_dim),
    })
}

pub fn parse_subspace(v: &Value) -> FResult<GradedSubspace> {
    let n = small(field(v, "n")?, "n")?;
    let degree = uint(field(v, "degree")?, "degree")? as usize;
    let dim = uint(field(v, "ambient_dim")?, "ambient_dim")? as usize;
    let mut basis = Echelon::new();
    for row in array(field(v, "rows")?, "rows")? {
        let row = array(row, "row")?;
        if row.len() != dim {
            return err("row length differs from ambient_dim");
        }
        let dense: Vec<Scalar> = row.iter().map(parse_scalar).collect::<FResult<_>>()?;
        basis.insert(brunlie_core::linalg::from_dense(&dense));
    }
    let sub = GradedSubspace { n, degree, basis };
    if sub.dim() as u64 != uint(field(v, "dim")?, "dim")? {
        return err("rows are not independent");
    }
    Ok(sub)
}

/// Basis vectors of a subspace as combed elements.
pub fn subspace_elements(sub: &GradedSubspace, basis: &CombedBasis) -> Value {
    Value::Array(
        sub.canonical_rows()
            .iter()
            .map(|r| combed(&basis.from_coords(r)))
            .collect(),
    )
}

pub fn solution_space(s: &SolutionSpace) -> Value {
    json!({ "weight": s.weight, "dim": s.dim(), "basis": s.elements().iter().map(lie).collect::<Vec<_>>() })
}

/// One object per flavor: its solution dimension and the containments with
/// that flavor on the smaller side that hold.
pub fn audit_rows(rows: &[AuditRow]) -> Value {
    let mut out = Vec::new();
    for r in rows {
        for (i, f) in PentFlavor::ALL.iter().enumerate() {
            let own: Vec<Value> = r
                .checks
                .iter()
                .filter(|(name, _)| {
                    name.starts_with(f.name()) || (i == 0 && name.starts_with("pent"))
                })
                .map(|(name, ok)| json!({ "claim": name, "holds": ok }))
                .collect();
            out.push(json!({ "weight": r.weight, "k": r.k, "flavor": f.name(), "dim": r.dims[i], "contains": own }));
        }
    }
    Value::Array(out)
}

// ---------------------------------------------------------------------------
// double shuffle data

pub fn composition(c: &Composition) -> Value {
    json!(c.0)
}

pub fn parse_composition(v: &Value) -> FResult<Composition> {
    let parts: Vec<u8> = array(v, "composition")?
        .iter()
        .map(|x| small(x, "part"))
        .collect::<FResult<_>>()?;
    Ok(Composition::new(parts)?)
}

/// P-space elements as `{a, b, coeff}` with `a`, `b` compositions.
pub fn p_space(t: &YTensor) -> Value {
    Value::Array(
        t.iter()
            .map(|((a, b), c)| {
                json!({
                    "a": composition(&Composition::from_yword(a)),
                    "b": composition(&Composition::from_yword(b)),
                    "coeff": scalar(c),
                })
            })
            .collect(),
    )
}

pub fn parse_p_space(v: &Value) -> FResult<YTensor> {
    let mut out = YTensor::new();
    for t in array(v, "P-space element")? {
        let a = parse_composition(field(t, "a")?)?.to_yword();
        let b = parse_composition(field(t, "b")?)?.to_yword();
        out.add_term((a, b), parse_scalar(field(t, "coeff")?)?);
    }
    Ok(out)
}

pub fn tensor(t: &TensorPoly, rank: u8) -> Value {
    let a = default_alphabet(rank);
    Value::Array(
        t.iter()
            .map(|((l, r), c)| json!({ "left": word(l, &a), "right": word(r, &a), "coeff": scalar(c) }))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// derivations

pub fn derivation(u: &TangentialDerivation) -> Value {
    json!([ncpoly(u.component(0)), ncpoly(u.component(1))])
}

pub fn parse_derivation(v: &Value) -> FResult<TangentialDerivation> {
    let pair = array(v, "derivation")?;
    if pair.len() != 2 {
        return err("a derivation is a pair of polynomials");
    }
    Ok(TangentialDerivation::new(
        parse_ncpoly(&pair[0])?,
        parse_ncpoly(&pair[1])?,
    )?)
}

pub fn krv_report(r: &KrvReport, conv: SpanConvention) -> Value {
    json!({
        "convention": conv.name(),
        "special_defect": ncpoly(&r.special_defect),
        "divergence": cyclic(&r.divergence, 2),
        "certificate": r.certificate.as_ref().map(|c| c.iter().map(scalar).collect::<Vec<_>>()),
        "symmetric": r.symmetric,
        "krv2": r.in_krv2(),
        "krv_sym": r.in_krv_sym(),
    })
}

pub fn krv_audit_row(r: &KrvAuditRow) -> Value {
    let conv = r.convention();
    let i = conv
        .and_then(|c| SpanConvention::ALL.iter().position(|&x| x == c))
        .unwrap_or(0);
    json!({
        "weight": r.weight,
        "dimA": r.dim_a,
        "dimB": r.dim_b[i],
        "dimC": r.dim_c,
        "equal": r.equal[i],
        "contained": r.contained[i],
        "convention": conv.map(|c| c.name()).unwrap_or("none"),
        "per_convention": SpanConvention::ALL.iter().enumerate().map(|(j, c)| json!({
            "convention": c.name(),
            "dimB": r.dim_b[j],
            "equal": r.equal[j],
            "contained": r.contained[j],
        })).collect::<Vec<_>>(),
        "grt_em_dim": r.grt_em_dim,
    })
}

// ---------------------------------------------------------------------------
// braids and free groups

pub fn braid(b: &BraidWord) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(b.n()));
    m.insert(
        "word".into(),
        Value::Array(b.word().iter().map(|&(i, s)| json!([i, s])).collect()),
    );
    if b.fixed() > 0 {
        m.insert("fixed".into(), json!(b.fixed()));
    }
    Value::Object(m)
}

fn crossings(v: &Value) -> FResult<Vec<(u8, i8)>> {
    array(v, "word")?
        .iter()
        .map(|c| {
            let c = array(c, "crossing")?;
            if c.len() != 2 {
                return err("a crossing is [index, sign]");
            }
            let s = c[1]
                .as_i64()
                .ok_or_else(|| FormatError("sign must be ±1".into()))?;
            if s != 1 && s != -1 {
                return err("sign must be ±1");
            }
            Ok((small(&c[0], "index")?, s as i8))
        })
        .collect()
}

pub fn parse_braid(v: &Value) -> FResult<BraidWord> {
    let n = small(field(v, "n")?, "n")?;
    let b = BraidWord::new(n, crossings(field(v, "word")?)?)?;
    match v.get("fixed") {
        None => Ok(b),
        Some(m) => Ok(b.with_fixed(small(m, "fixed")?)?),
    }
}

pub fn free_word(w: &FreeGroupWord) -> Value {
    json!({ "rank": w.rank(), "word": w.letters().iter().map(|&(i, s)| json!([i, s])).collect::<Vec<_>>() })
}

pub fn parse_free_word(v: &Value) -> FResult<FreeGroupWord> {
    let r = small(field(v, "rank")?, "rank")?;
    Ok(FreeGroupWord::new(r, crossings(field(v, "word")?)?)?)
}

/// Magnus letters `X1, X2, …`.
pub fn magnus_alphabet(rank: u8) -> Vec<String> {
    (1..=rank).map(|i| format!("X{}", i)).collect()
}

pub fn n_triviality(r: &NTrivialityReport) -> Value {
    json!({
        "truncation": r.truncation,
        "leading_degree": r.leading_degree,
        "leading_term": ncpoly_with(&r.leading_term, &magnus_alphabet(r.leading_term.rank())),
        "in_deletion_kernels": r.in_deletion_kernels,
        "lie": r.lie,
        "in_brun": r.in_brun,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_strings() {
        assert_eq!(scalar(&Scalar::ratio(-3, 6)), json!("-1/2"));
        assert_eq!(scalar(&Scalar::from_int(4)), json!("4/1"));
        assert_eq!(parse_scalar(&json!(3)).unwrap(), Scalar::from_int(3));
        assert!(parse_scalar(&json!("1/0")).is_err());
    }

    #[test]
    fn ncpoly_layout() {
        let p = &NCPoly::monomial(2, vec![0, 1], Scalar::one())
            + &NCPoly::constant(2, Scalar::ratio(1, 2));
        let v = ncpoly(&p);
        assert_eq!(
            v,
            json!({"alphabet": ["x0", "x1"], "terms": [
                {"coeff": "1/2", "word": []},
                {"coeff": "1/1", "word": ["x0", "x1"]},
            ]})
        );
        assert_eq!(parse_ncpoly(&v).unwrap(), p);
    }

    #[test]
    fn lie_with_named_letters() {
        let v = json!({"alphabet": ["x", "y"], "coords": [{"lyndon": ["x", "x", "y"], "coeff": "1/1"}]});
        let e = parse_lie(&v).unwrap();
        let x = LieElement::generator(2, 0);
        let y = LieElement::generator(2, 1);
        assert_eq!(e, x.bracket(&x.bracket(&y)));
        assert_eq!(lie_with(&e, &["x".into(), "y".into()]), v);
        let bad = json!({"alphabet": ["x", "y"], "coords": [{"lyndon": ["y", "x"], "coeff": "1"}]});
        assert!(parse_lie(&bad).is_err());
    }

    #[test]
    fn braid_layout() {
        let b = BraidWord::parse(4, "s1 S2").unwrap();
        let v = braid(&b);
        assert_eq!(v, json!({"n": 4, "word": [[1, 1], [2, -1]]}));
        assert_eq!(parse_braid(&v).unwrap(), b);
        let f = parse_braid(&json!({"n": 4, "word": [], "fixed": 1})).unwrap();
        assert_eq!(f.fixed(), 1);
        assert!(parse_braid(&json!({"n": 4, "word": [[4, 1]]})).is_err());
        assert!(parse_braid(&json!({"n": 4, "word": [[1, 2]]})).is_err());
    }

    #[test]
    fn p_space_layout() {
        let t: YTensor = [(
            (Composition(vec![2, 1]).to_yword(), vec![3]),
            Scalar::from_int(-1),
        )]
        .into_iter()
        .collect();
        let v = p_space(&t);
        assert_eq!(v, json!([{"a": [2, 1], "b": [3], "coeff": "-1/1"}]));
        assert_eq!(parse_p_space(&v).unwrap(), t);
    }
}
