//! Loading ideals and simplicial complexes from files or inline text.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use monolc::{Monomial, MonomialIdeal, PolynomialRingSpec, SimplicialComplex};

/// `{"num_vertices": n, "facets": [[0, 1], [2]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub num_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

/// Reads an ideal from a JSON file, an inline JSON object, or generator
/// notation such as `x1*x2^2, x3` (variables are `x1 .. xd`).
pub fn load_ideal(arg: &str, vars: Option<usize>, field_char: Option<u64>) -> Result<MonomialIdeal> {
    let trimmed = arg.trim();
    let ideal = if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        MonomialIdeal::from_json(&text).map_err(|e| anyhow!(e)).with_context(|| format!("in {arg}"))?
    } else if trimmed.starts_with('{') {
        MonomialIdeal::from_json(trimmed).map_err(|e| anyhow!(e)).context("in inline ideal")?
    } else {
        parse_generators(trimmed, vars)?
    };
    let ideal = match vars {
        Some(d) if d != ideal.num_vars() => {
            bail!("ideal lives in {} variables but --vars is {d}", ideal.num_vars())
        }
        _ => ideal,
    };
    match field_char {
        Some(p) => Ok(ideal.with_ring(PolynomialRingSpec::new(ideal.num_vars(), p)?)?),
        None => Ok(ideal),
    }
}

fn parse_generators(text: &str, vars: Option<usize>) -> Result<MonomialIdeal> {
    let body = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(text).trim();
    let mut gens: Vec<Vec<(usize, u32)>> = Vec::new();
    if body != "0" && !body.is_empty() {
        for (pos, g) in body.split(',').enumerate() {
            gens.push(parse_monomial(g.trim()).with_context(|| format!("generator {} `{}`", pos + 1, g.trim()))?);
        }
    }
    let seen = gens.iter().flatten().map(|&(i, _)| i + 1).max().unwrap_or(0);
    let d = match vars {
        Some(d) if d < seen => bail!("generator uses x{seen} but --vars is {d}"),
        Some(d) => d,
        None if seen == 0 => bail!("cannot infer the number of variables; pass --vars"),
        None => seen,
    };
    let ring = PolynomialRingSpec::new(d, 0)?;
    let monomials = gens.into_iter().map(|factors| {
        let mut e = vec![0; d];
        for (i, p) in factors {
            e[i] += p;
        }
        Monomial::new(e)
    });
    Ok(MonomialIdeal::new(ring, monomials)?)
}

fn parse_monomial(text: &str) -> Result<Vec<(usize, u32)>> {
    if text == "1" {
        return Ok(Vec::new());
    }
    text.split('*')
        .map(|factor| {
            let factor = factor.trim();
            let (var, pow) = factor.split_once('^').unwrap_or((factor, "1"));
            let idx: usize = var
                .strip_prefix('x')
                .ok_or_else(|| anyhow!("expected a variable x<i>, found `{var}`"))?
                .parse()
                .with_context(|| format!("bad variable index in `{var}`"))?;
            if idx == 0 {
                bail!("variables are numbered from x1");
            }
            let pow: u32 = pow.parse().with_context(|| format!("bad exponent in `{factor}`"))?;
            Ok((idx - 1, pow))
        })
        .collect()
}

/// Reads a simplicial complex from a JSON file or inline JSON object.
pub fn load_complex(arg: &str) -> Result<SimplicialComplex> {
    let (text, origin) = if Path::new(arg).is_file() {
        (fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?, arg.to_string())
    } else {
        (arg.to_string(), "inline complex".to_string())
    };
    let file: ComplexFile = serde_json::from_str(&text).with_context(|| format!("in {origin}"))?;
    Ok(SimplicialComplex::new(file.num_vertices, &file.facets)?)
}
