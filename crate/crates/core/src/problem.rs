//! Problem files.
//!
//! ```text
//! # comment
//! ring { field Q; vars x1 x2; relations x1*x2; }
//! algebra { vars Y1 Y2; relations x2*Y1, x1*Y2; }
//! morphism { precision 12; Y1 = x1; Y2 = x2; verify Y1 = x1; verify_precision 24; }
//! options { seed 42; max_subset 3; }
//! minprimes { x1 | x2 }
//! coeffext { vars U1; relations U1^2 - 2; }
//! ```

use std::fmt::Write as _;

use gnd_algebra::parse::{parse_poly, split_top_level};
use gnd_algebra::{BlockRole, Polynomial, Ring, RingRef, Var};

use crate::coeff::CoeffExt;
use crate::elkik::AlgebraPresentation;
use crate::error::{GndError, Result};
use crate::local::LocalRingSpec;

#[derive(Debug, Clone)]
pub struct Problem {
    pub field: String,
    pub base_vars: Vec<String>,
    pub coeff_vars: Vec<String>,
    pub algebra_vars: Vec<String>,
    /// All declared variables: base, then coefficient, then algebra.
    pub ring: RingRef,
    pub base_relations: Vec<Polynomial>,
    pub coeff_relations: Vec<Polynomial>,
    pub algebra_relations: Vec<Polynomial>,
    pub precision: Option<u32>,
    pub jets: Vec<(String, Polynomial)>,
    pub verify: Vec<(String, Polynomial)>,
    pub verify_precision: Option<u32>,
    pub seed: Option<u64>,
    pub max_subset: Option<usize>,
    pub minprimes: Option<Vec<Vec<Polynomial>>>,
}

struct Stmt<'a> {
    text: &'a str,
    offset: usize,
}

struct Section<'a> {
    name: &'a str,
    offset: usize,
    body: Vec<Stmt<'a>>,
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

fn err(src: &str, offset: usize, msg: impl Into<String>) -> GndError {
    let (line, col) = position(src, offset);
    GndError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Blanks out comments, keeping byte offsets intact.
fn strip_comments(src: &str) -> String {
    src.lines()
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn trimmed(text: &str, offset: usize) -> Stmt<'_> {
    let lead = text.len() - text.trim_start().len();
    Stmt {
        text: text.trim(),
        offset: offset + lead,
    }
}

fn sections<'a>(clean: &'a str, src: &str) -> Result<Vec<Section<'a>>> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < clean.len() {
        let rest = &clean[pos..];
        let skip = rest.len() - rest.trim_start().len();
        pos += skip;
        if pos >= clean.len() {
            break;
        }
        let rest = &clean[pos..];
        let open = rest
            .find('{')
            .ok_or_else(|| err(src, pos, "expected `name {`"))?;
        let name = rest[..open].trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(err(src, pos, format!("invalid section header `{name}`")));
        }
        let close = rest[open..]
            .find('}')
            .map(|i| i + open)
            .ok_or_else(|| err(src, pos + open, format!("unterminated section `{name}`")))?;
        let body_start = pos + open + 1;
        let body = &clean[body_start..pos + close];
        let mut stmts = Vec::new();
        let mut off = body_start;
        for piece in body.split(';') {
            let s = trimmed(piece, off);
            if !s.text.is_empty() {
                stmts.push(s);
            }
            off += piece.len() + 1;
        }
        out.push(Section {
            name,
            offset: pos,
            body: stmts,
        });
        pos += close + 1;
    }
    Ok(out)
}

fn keyword<'a>(s: &Stmt<'a>) -> (&'a str, Stmt<'a>) {
    let t = s.text;
    let end = t.find(|c: char| c.is_whitespace()).unwrap_or(t.len());
    (&t[..end], trimmed(&t[end..], s.offset + end))
}

fn names(s: &Stmt<'_>, src: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for n in s.text.split_whitespace() {
        let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(err(src, s.offset, format!("invalid variable name `{n}`")));
        }
        out.push(n.to_string());
    }
    Ok(out)
}

fn int<T: std::str::FromStr>(s: &Stmt<'_>, src: &str, what: &str) -> Result<T> {
    s.text
        .parse()
        .map_err(|_| err(src, s.offset, format!("expected an integer {what}, found `{}`", s.text)))
}

#[derive(Default)]
struct Raw<'a> {
    field: Option<String>,
    base_vars: Vec<String>,
    coeff_vars: Vec<String>,
    algebra_vars: Vec<String>,
    base_rel: Vec<Stmt<'a>>,
    coeff_rel: Vec<Stmt<'a>>,
    alg_rel: Vec<Stmt<'a>>,
    precision: Option<u32>,
    jets: Vec<(String, Stmt<'a>, usize)>,
    verify: Vec<(String, Stmt<'a>, usize)>,
    verify_precision: Option<u32>,
    seed: Option<u64>,
    max_subset: Option<usize>,
    minprimes: Option<Stmt<'a>>,
    seen: Vec<&'a str>,
}

fn split_list<'a>(s: &Stmt<'a>, sep: u8) -> Vec<Stmt<'a>> {
    let mut out = Vec::new();
    for piece in split_top_level(s.text, sep) {
        let off = s.offset + (piece.as_ptr() as usize - s.text.as_ptr() as usize);
        let t = trimmed(piece, off);
        if !t.text.is_empty() {
            out.push(t);
        }
    }
    out
}

pub fn parse_problem(src: &str) -> Result<Problem> {
    let clean = strip_comments(src);
    let mut raw = Raw::default();
    for sec in sections(&clean, src)? {
        if raw.seen.contains(&sec.name) {
            return Err(err(src, sec.offset, format!("duplicate section `{}`", sec.name)));
        }
        raw.seen.push(sec.name);
        match sec.name {
            "ring" | "algebra" | "coeffext" => {
                for st in &sec.body {
                    let (kw, rest) = keyword(st);
                    match (sec.name, kw) {
                        ("ring", "field") => {
                            if rest.text != "Q" {
                                return Err(err(src, rest.offset, format!("unsupported field `{}`; only Q is available", rest.text)));
                            }
                            raw.field = Some(rest.text.to_string());
                        }
                        (_, "vars") => {
                            let v = names(&rest, src)?;
                            match sec.name {
                                "ring" => raw.base_vars = v,
                                "algebra" => raw.algebra_vars = v,
                                _ => raw.coeff_vars = v,
                            }
                        }
                        (_, "relations") => {
                            let list = split_list(&rest, b',');
                            match sec.name {
                                "ring" => raw.base_rel = list,
                                "algebra" => raw.alg_rel = list,
                                _ => raw.coeff_rel = list,
                            }
                        }
                        _ => return Err(err(src, st.offset, format!("unknown statement `{kw}` in `{}`", sec.name))),
                    }
                }
            }
            "morphism" => {
                for st in &sec.body {
                    let (kw, rest) = keyword(st);
                    match kw {
                        "precision" => raw.precision = Some(int(&rest, src, "precision")?),
                        "verify_precision" => raw.verify_precision = Some(int(&rest, src, "precision")?),
                        _ => {
                            let (target, stmt) = if kw == "verify" { (&mut raw.verify, rest) } else { (&mut raw.jets, trimmed(st.text, st.offset)) };
                            let eq = stmt
                                .text
                                .find('=')
                                .ok_or_else(|| err(src, stmt.offset, "expected `Y = <polynomial>`"))?;
                            let name = stmt.text[..eq].trim().to_string();
                            let value = trimmed(&stmt.text[eq + 1..], stmt.offset + eq + 1);
                            target.push((name, value, stmt.offset));
                        }
                    }
                }
            }
            "options" => {
                for st in &sec.body {
                    let (kw, rest) = keyword(st);
                    match kw {
                        "seed" => raw.seed = Some(int(&rest, src, "seed")?),
                        "max_subset" => raw.max_subset = Some(int(&rest, src, "subset size")?),
                        _ => return Err(err(src, st.offset, format!("unknown option `{kw}`"))),
                    }
                }
            }
            "minprimes" => {
                if sec.body.len() > 1 {
                    return Err(err(src, sec.body[1].offset, "minprimes takes one `|`-separated list"));
                }
                raw.minprimes = sec.body.into_iter().next();
            }
            other => return Err(err(src, sec.offset, format!("unknown section `{other}`"))),
        }
    }
    build(raw, src)
}

fn build(raw: Raw<'_>, src: &str) -> Result<Problem> {
    if !raw.seen.contains(&"ring") {
        return Err(err(src, 0, "missing `ring` section"));
    }
    let mut vars: Vec<Var> = Vec::new();
    for (names, role) in [
        (&raw.base_vars, BlockRole::Base),
        (&raw.coeff_vars, BlockRole::Coefficient),
        (&raw.algebra_vars, BlockRole::Algebra),
    ] {
        for n in names {
            vars.push(Var {
                name: n.clone(),
                role,
            });
        }
    }
    if raw.base_vars.is_empty() {
        return Err(err(src, 0, "the ring has no variables"));
    }
    let ring = Ring::new(vars).map_err(|e| err(src, 0, e.to_string()))?;
    let idx = |role| ring.indices_with_role(role);
    let (bx, bu, by) = (idx(BlockRole::Base), idx(BlockRole::Coefficient), idx(BlockRole::Algebra));
    let all: Vec<usize> = (0..ring.nvars()).collect();
    let only = |st: &Stmt<'_>, allowed: &[usize], what: &str| -> Result<Polynomial> {
        let p = parse_poly(&ring, st.text).map_err(|e| err(src, st.offset, e.to_string()))?;
        let outside: Vec<usize> = all.iter().copied().filter(|i| !allowed.contains(i)).collect();
        if p.uses_any(&outside) {
            return Err(err(src, st.offset, format!("{what} `{}` uses variables outside its block", st.text)));
        }
        Ok(p)
    };
    let base_relations = raw
        .base_rel
        .iter()
        .map(|s| only(s, &bx, "relation"))
        .collect::<Result<Vec<_>>>()?;
    let coeff_relations = raw
        .coeff_rel
        .iter()
        .map(|s| only(s, &bu, "relation"))
        .collect::<Result<Vec<_>>>()?;
    let xy: Vec<usize> = bx.iter().chain(&by).copied().collect();
    let algebra_relations = raw
        .alg_rel
        .iter()
        .map(|s| only(s, &xy, "relation"))
        .collect::<Result<Vec<_>>>()?;
    let xu: Vec<usize> = bx.iter().chain(&bu).copied().collect();
    let jet_list = |list: &[(String, Stmt<'_>, usize)], prec: Option<u32>| -> Result<Vec<(String, Polynomial)>> {
        let mut out: Vec<(String, Polynomial)> = Vec::new();
        for (name, value, at) in list {
            if !raw.algebra_vars.contains(name) {
                return Err(err(src, *at, format!("`{name}` is not an algebra variable")));
            }
            if out.iter().any(|(n, _)| n == name) {
                return Err(err(src, *at, format!("duplicate jet for `{name}`")));
            }
            let p = only(value, &xu, "jet")?;
            if let Some(n) = prec {
                if p.degree_in(&bx).is_some_and(|d| d >= n as u64) {
                    return Err(err(src, value.offset, format!("jet of `{name}` has degree ≥ {n}")));
                }
            }
            out.push((name.clone(), p));
        }
        Ok(out)
    };
    if raw.precision == Some(0) {
        return Err(err(src, 0, "the precision must be at least 1"));
    }
    let jets = jet_list(&raw.jets, raw.precision)?;
    if raw.precision.is_some() {
        for y in &raw.algebra_vars {
            if !jets.iter().any(|(n, _)| n == y) {
                return Err(err(src, 0, format!("missing jet for `{y}`")));
            }
        }
    } else if !jets.is_empty() {
        return Err(err(src, 0, "jets given without a precision"));
    }
    let verify = jet_list(&raw.verify, raw.verify_precision)?;
    if !verify.is_empty() && verify.len() != raw.algebra_vars.len() {
        return Err(err(src, 0, "verification jets must cover every algebra variable"));
    }
    let minprimes = match &raw.minprimes {
        None => None,
        Some(st) => {
            let mut comps = Vec::new();
            for comp in split_list(st, b'|') {
                let gens = split_list(&comp, b',')
                    .iter()
                    .map(|g| only(g, &bx, "prime generator"))
                    .collect::<Result<Vec<_>>>()?;
                comps.push(gens);
            }
            Some(comps)
        }
    };
    Ok(Problem {
        field: raw.field.unwrap_or_else(|| "Q".into()),
        base_vars: raw.base_vars,
        coeff_vars: raw.coeff_vars,
        algebra_vars: raw.algebra_vars,
        ring,
        base_relations,
        coeff_relations,
        algebra_relations,
        precision: raw.precision,
        jets,
        verify,
        verify_precision: raw.verify_precision,
        seed: raw.seed,
        max_subset: raw.max_subset,
        minprimes,
    })
}

fn join(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

impl Problem {
    fn sub_ring(&self, roles: &[BlockRole]) -> RingRef {
        let idx: Vec<usize> = (0..self.ring.nvars())
            .filter(|&i| roles.contains(&self.ring.role(i)))
            .collect();
        self.ring.select(&idx)
    }

    fn embed_all(ps: &[Polynomial], ring: &RingRef) -> Vec<Polynomial> {
        ps.iter().map(|p| p.embed(ring).expect("block-restricted polynomial")).collect()
    }

    pub fn base_ring(&self) -> RingRef {
        self.sub_ring(&[BlockRole::Base])
    }

    pub fn algebra_ring(&self) -> RingRef {
        self.sub_ring(&[BlockRole::Base, BlockRole::Algebra])
    }

    /// The base variables followed by the coefficient variables.
    pub fn jet_ring(&self) -> RingRef {
        self.sub_ring(&[BlockRole::Base, BlockRole::Coefficient])
    }

    pub fn local_spec(&self) -> Result<LocalRingSpec> {
        let r = self.base_ring();
        LocalRingSpec::new(
            &r,
            Self::embed_all(&self.base_relations, &r),
            self.minprimes.as_ref().map(|ps| ps.iter().map(|g| Self::embed_all(g, &r)).collect()),
        )
    }

    pub fn algebra(&self) -> AlgebraPresentation {
        let r = self.algebra_ring();
        AlgebraPresentation::new(
            &r,
            Self::embed_all(&self.algebra_relations, &r),
            Self::embed_all(&self.base_relations, &r),
        )
    }

    pub fn coeff_ext(&self) -> Result<CoeffExt> {
        if self.coeff_vars.is_empty() {
            return Ok(CoeffExt::trivial());
        }
        let r = self.sub_ring(&[BlockRole::Coefficient]);
        CoeffExt::new(&r, Self::embed_all(&self.coeff_relations, &r))
    }

    /// Jets as polynomials in the jet ring, in algebra-variable order.
    pub fn jet_polys(&self) -> Vec<(String, Polynomial)> {
        let r = self.jet_ring();
        self.algebra_vars
            .iter()
            .filter_map(|y| {
                self.jets
                    .iter()
                    .find(|(n, _)| n == y)
                    .map(|(n, p)| (n.clone(), p.embed(&r).expect("jet in base and coefficient variables")))
            })
            .collect()
    }

    pub fn verify_polys(&self) -> Vec<(String, Polynomial)> {
        let r = self.jet_ring();
        self.algebra_vars
            .iter()
            .filter_map(|y| {
                self.verify
                    .iter()
                    .find(|(n, _)| n == y)
                    .map(|(n, p)| (n.clone(), p.embed(&r).expect("jet in base and coefficient variables")))
            })
            .collect()
    }

    /// Canonical text; parsing it gives back an equal problem.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ring {{");
        let _ = writeln!(s, "  field {};", self.field);
        let _ = writeln!(s, "  vars {};", self.base_vars.join(" "));
        if !self.base_relations.is_empty() {
            let _ = writeln!(s, "  relations {};", join(&self.base_relations));
        }
        let _ = writeln!(s, "}}");
        if !self.coeff_vars.is_empty() {
            let _ = writeln!(s, "coeffext {{");
            let _ = writeln!(s, "  vars {};", self.coeff_vars.join(" "));
            if !self.coeff_relations.is_empty() {
                let _ = writeln!(s, "  relations {};", join(&self.coeff_relations));
            }
            let _ = writeln!(s, "}}");
        }
        if !self.algebra_vars.is_empty() || !self.algebra_relations.is_empty() {
            let _ = writeln!(s, "algebra {{");
            if !self.algebra_vars.is_empty() {
                let _ = writeln!(s, "  vars {};", self.algebra_vars.join(" "));
            }
            if !self.algebra_relations.is_empty() {
                let _ = writeln!(s, "  relations {};", join(&self.algebra_relations));
            }
            let _ = writeln!(s, "}}");
        }
        if let Some(n) = self.precision {
            let _ = writeln!(s, "morphism {{");
            let _ = writeln!(s, "  precision {n};");
            for (y, p) in &self.jets {
                let _ = writeln!(s, "  {y} = {p};");
            }
            if let Some(m) = self.verify_precision {
                let _ = writeln!(s, "  verify_precision {m};");
            }
            for (y, p) in &self.verify {
                let _ = writeln!(s, "  verify {y} = {p};");
            }
            let _ = writeln!(s, "}}");
        }
        if self.seed.is_some() || self.max_subset.is_some() {
            let _ = writeln!(s, "options {{");
            if let Some(seed) = self.seed {
                let _ = writeln!(s, "  seed {seed};");
            }
            if let Some(m) = self.max_subset {
                let _ = writeln!(s, "  max_subset {m};");
            }
            let _ = writeln!(s, "}}");
        }
        if let Some(ps) = &self.minprimes {
            let comps: Vec<String> = ps.iter().map(|g| join(g)).collect();
            let _ = writeln!(s, "minprimes {{ {} }}", comps.join(" | "));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "# two lines crossing\n\
        ring { field Q; vars x1 x2; relations x1*x2; }\n\
        algebra { vars Y1 Y2; relations x2*Y1, x1*Y2; }\n\
        morphism { precision 12; Y1 = x1 + x1^2; Y2 = x2; }\n\
        options { seed 3; }\n\
        minprimes { x1 | x2 }\n";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_problem(EXAMPLE).unwrap();
        assert_eq!(p.base_vars, vec!["x1", "x2"]);
        assert_eq!(p.algebra_relations.len(), 2);
        assert_eq!(p.precision, Some(12));
        assert_eq!(p.minprimes.as_ref().unwrap().len(), 2);
        let text = p.to_text();
        let q = parse_problem(&text).unwrap();
        assert_eq!(q.to_text(), text);
    }

    #[test]
    fn empty_relations_accepted() {
        let p = parse_problem("ring { vars x; }\nalgebra { vars Y1; }\n").unwrap();
        assert!(p.base_relations.is_empty() && p.algebra_relations.is_empty());
        assert!(p.local_spec().is_ok());
    }

    #[test]
    fn jet_degree_at_precision_is_rejected() {
        let src = "ring { vars x; }\nalgebra { vars Y1; relations Y1 - x; }\nmorphism { precision 3;\n  Y1 = x + x^3; }\n";
        match parse_problem(src) {
            Err(GndError::Parse { line, col, .. }) => assert_eq!((line, col), (4, 8)),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_variable_is_rejected() {
        let src = "ring { vars x; }\nalgebra { vars Y1; relations Y1 - z; }\n";
        assert!(matches!(parse_problem(src), Err(GndError::Parse { line: 2, .. })));
    }
}
