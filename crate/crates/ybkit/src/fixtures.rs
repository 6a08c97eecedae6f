//! Golden-value tables: one record per line,
//!
//! ```text
//! name | re,im; re,im; … | re,im | tolerance
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Integer and real
//! arguments are given as complex numbers with zero imaginary part.

use crate::solutions::trig;
use crate::special::{
    eisenstein_g, j_invariant, kronecker_f, kronecker_f_pq, theta11, theta11_derivs, weierstrass_p,
    weierstrass_zeta, zeta_char_pq, ModularParam,
};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRecord {
    pub name: String,
    pub inputs: Vec<C64>,
    pub expected: C64,
    pub tolerance: f64,
    pub line: usize,
}

fn parse_complex(s: &str) -> Result<C64> {
    let (re, im) = s.trim().split_once(',').ok_or_else(|| Error::Parse(format!("expected re,im: {s:?}")))?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
    Ok(C64::new(p(re)?, p(im)?))
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!("line {}: expected 4 fields", i + 1)));
        }
        let inputs = if fields[1].is_empty() {
            Vec::new()
        } else {
            fields[1].split(';').map(parse_complex).collect::<Result<_>>()?
        };
        out.push(GoldenRecord {
            name: fields[0].to_string(),
            inputs,
            expected: parse_complex(fields[2])?,
            tolerance: fields[3].parse().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?,
            line: i + 1,
        });
    }
    Ok(out)
}

fn arity(name: &str, inputs: &[C64], n: usize) -> Result<()> {
    if inputs.len() == n {
        Ok(())
    } else {
        Err(Error::Parse(format!("{name} takes {n} arguments, got {}", inputs.len())))
    }
}

fn index(z: C64) -> usize {
    z.re.round() as usize
}

/// Evaluate a named function. τ is always the last argument where present.
pub fn evaluate(name: &str, a: &[C64]) -> Result<C64> {
    let m = |t: C64| ModularParam::new(t);
    match name {
        "theta11" => {
            arity(name, a, 2)?;
            theta11(a[0], &m(a[1])?)
        }
        "theta11_d1" | "theta11_d2" | "theta11_d3" => {
            arity(name, a, 2)?;
            let k = name.as_bytes()[name.len() - 1] - b'0';
            Ok(theta11_derivs(a[0], a[1])?[k as usize])
        }
        "eta1" => {
            arity(name, a, 1)?;
            Ok(m(a[0])?.eta1)
        }
        "eta2" => {
            arity(name, a, 1)?;
            Ok(m(a[0])?.eta2)
        }
        "weierstrass_zeta" => {
            arity(name, a, 2)?;
            weierstrass_zeta(a[0], &m(a[1])?)
        }
        "weierstrass_p" => {
            arity(name, a, 2)?;
            weierstrass_p(a[0], &m(a[1])?)
        }
        "zeta_char" => {
            arity(name, a, 4)?;
            zeta_char_pq(a[0].re, a[1].re, a[2], &m(a[3])?)
        }
        "eisenstein_g" => {
            arity(name, a, 2)?;
            eisenstein_g(a[0].re.round() as u32, &m(a[1])?)
        }
        "g2" => {
            arity(name, a, 1)?;
            Ok(m(a[0])?.g2())
        }
        "g3" => {
            arity(name, a, 1)?;
            Ok(m(a[0])?.g3())
        }
        "j_invariant" => {
            arity(name, a, 1)?;
            j_invariant(&m(a[0])?)
        }
        "kronecker_f" => {
            arity(name, a, 3)?;
            kronecker_f(a[0], a[1], &m(a[2])?)
        }
        "kronecker_f_pq" => {
            arity(name, a, 5)?;
            kronecker_f_pq(a[0].re, a[1].re, a[2], a[3], &m(a[4])?)
        }
        "trig_aybe1" | "trig_aybe2" | "trig_aybe2_literal" => {
            arity(name, a, 6)?;
            let t = match name {
                "trig_aybe1" => trig::aybe1(a[4], a[5]),
                "trig_aybe2" => trig::aybe2(a[4], a[5]),
                _ => trig::aybe2_literal(a[4], a[5]),
            };
            Ok(t.get(index(a[0]), index(a[1]), index(a[2]), index(a[3])))
        }
        _ => Err(Error::Parse(format!("unknown golden function {name:?}"))),
    }
}

/// Absolute deviation of each record; the caller decides pass/fail against `tolerance`.
pub fn check(records: &[GoldenRecord]) -> Vec<(GoldenRecord, Result<f64>)> {
    records
        .iter()
        .map(|r| (r.clone(), evaluate(&r.name, &r.inputs).map(|z| (z - r.expected).norm())))
        .collect()
}
