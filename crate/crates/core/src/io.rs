//! Text formats: `.spec` spectra, `.poly` monomial supports and nodes CSV.
//!
//! Everything here maps strings to values and back; reading and writing
//! files is left to the caller.

use num_traits::One;

use crate::error::{Error, Result};
use crate::polytope::MonomialData;
use crate::rat::{fmt_frac, parse_rat, Rat};
use crate::schoen::ZetaCoord;
use crate::spectra::{MixedSpectrum, Spectrum};

/// Contents of a `.spec` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecData {
    /// Three columns per line: `num/den weight multiplicity`.
    Mixed(MixedSpectrum),
    /// Two columns per line: `num/den multiplicity`.
    Plain(Spectrum),
}

/// A parsed `.spec` file, with the optional `# n: N` header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub n: Option<i64>,
    pub data: SpecData,
}

impl SpecFile {
    /// The mixed spectrum, or an error for a plain file.
    pub fn mixed(&self) -> Result<&MixedSpectrum> {
        match &self.data {
            SpecData::Mixed(m) => Ok(m),
            SpecData::Plain(_) => {
                Err(Error::InvalidInput("a mixed spectrum (three columns) is required".into()))
            }
        }
    }

    /// The spectrum, projecting a mixed file.
    pub fn plain(&self) -> Spectrum {
        match &self.data {
            SpecData::Mixed(m) => m.project(),
            SpecData::Plain(s) => s.clone(),
        }
    }
}

fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let body = line.strip_prefix('#')?.trim_start();
    let rest = body.strip_prefix(key)?.trim_start();
    Some(rest.strip_prefix(':')?.trim())
}

/// Parses a `.spec` file. All data lines must have the same column count.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut n = None;
    let mut columns = None;
    let mut rows: Vec<(Rat, i64, i64)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(v) = header_value(line, "n") {
            let v = v
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad n header {v:?}", lineno + 1)))?;
            n = Some(v);
            continue;
        }
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| Error::Parse(format!("line {}: {what} in {raw:?}", lineno + 1));
        if cols.len() != 2 && cols.len() != 3 {
            return Err(bad("expected 2 or 3 columns"));
        }
        match columns {
            None => columns = Some(cols.len()),
            Some(c) if c != cols.len() => return Err(bad("inconsistent column count")),
            _ => {}
        }
        let alpha = parse_rat(cols[0]).map_err(|_| bad("bad exponent"))?;
        let mult: i64 = cols[cols.len() - 1].parse().map_err(|_| bad("bad multiplicity"))?;
        let weight: i64 = if cols.len() == 3 {
            cols[1].parse().map_err(|_| bad("bad weight"))?
        } else {
            0
        };
        rows.push((alpha, weight, mult));
    }
    let data = if columns == Some(2) {
        SpecData::Plain(Spectrum::from_entries(rows.into_iter().map(|(a, _, m)| (a, m))))
    } else {
        SpecData::Mixed(MixedSpectrum::from_entries(rows))
    };
    Ok(SpecFile { n, data })
}

/// Renders a mixed spectrum in `.spec` form, sorted by `(α, w)`.
pub fn format_mixed_spec(n: Option<i64>, s: &MixedSpectrum) -> String {
    let mut out = String::new();
    if let Some(n) = n {
        out.push_str(&format!("# n: {n}\n"));
    }
    for (a, w, m) in s.iter() {
        out.push_str(&format!("{} {w} {m}\n", fmt_frac(a)));
    }
    out
}

/// Renders a plain spectrum in two-column `.spec` form.
pub fn format_spec(n: Option<i64>, s: &Spectrum) -> String {
    let mut out = String::new();
    if let Some(n) = n {
        out.push_str(&format!("# n: {n}\n"));
    }
    for (a, m) in s.iter() {
        out.push_str(&format!("{} {m}\n", fmt_frac(a)));
    }
    out
}

/// Parses a `.poly` file: `e_1 ... e_{n+1} [coeff]` per line. When any
/// line carries a coefficient, lines without one default to 1.
pub fn parse_poly(text: &str) -> Result<MonomialData> {
    let mut exps: Vec<Vec<i64>> = Vec::new();
    let mut coeffs: Vec<Option<Rat>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what} in {raw:?}", lineno + 1));
        let mut e = Vec::new();
        let mut c = None;
        for tok in line.split_whitespace() {
            if c.is_some() {
                return Err(bad("token after coefficient"));
            }
            if tok.contains('/') {
                c = Some(parse_rat(tok).map_err(|_| bad("bad coefficient"))?);
            } else {
                e.push(tok.parse().map_err(|_| bad("bad exponent"))?);
            }
        }
        exps.push(e);
        coeffs.push(c);
    }
    if exps.is_empty() {
        return Err(Error::Parse("no monomials".into()));
    }
    if coeffs.iter().any(Option::is_some) {
        let cs = coeffs.into_iter().map(|c| c.unwrap_or_else(Rat::one)).collect();
        MonomialData::with_coefficients(exps, cs)
    } else {
        MonomialData::new(exps)
    }
}

/// Renders monomial data in `.poly` form; coefficients are written as
/// `num/den` so that they are distinguishable from exponents.
pub fn format_poly(m: &MonomialData) -> String {
    let mut out = String::new();
    for (i, e) in m.exponents.iter().enumerate() {
        let mut line: Vec<String> = e.iter().map(i64::to_string).collect();
        if let Some(cs) = &m.coefficients {
            line.push(fmt_frac(&cs[i]));
        }
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Nodes CSV contents: the conductor `k` and one coordinate row per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodesFile {
    pub conductor: u64,
    pub nodes: Vec<Vec<ZetaCoord>>,
}

/// Parses a nodes CSV. The header `# conductor: k` is required when any
/// coordinate mentions `zeta`; it defaults to 1 otherwise.
pub fn parse_nodes(text: &str) -> Result<NodesFile> {
    let mut conductor = None;
    let mut nodes = Vec::new();
    let mut uses_zeta = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(v) = header_value(line, "conductor") {
            let k: u64 = v.parse().map_err(|_| {
                Error::Parse(format!("line {}: bad conductor {v:?}", lineno + 1))
            })?;
            if k == 0 {
                return Err(Error::Parse("conductor must be positive".into()));
            }
            conductor = Some(k);
            continue;
        }
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        uses_zeta |= line.contains("zeta");
        let row = line.split(',').map(ZetaCoord::parse).collect::<Result<Vec<_>>>()?;
        nodes.push(row);
    }
    if uses_zeta && conductor.is_none() {
        return Err(Error::Parse("cyclotomic coordinates need a '# conductor: k' header".into()));
    }
    Ok(NodesFile { conductor: conductor.unwrap_or(1), nodes })
}

/// Renders a nodes CSV with its conductor header.
pub fn format_nodes(f: &NodesFile) -> String {
    let mut out = format!("# conductor: {}\n", f.conductor);
    for row in &f.nodes {
        let cells: Vec<String> = row.iter().map(ZetaCoord::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::schoen::dwork_nodes;

    #[test]
    fn spec_round_trip() {
        let s = MixedSpectrum::parse_bracket("[(1,3)]+2[(5/4,2)]+3[(3/2,2)]+2[(7/4,2)]+[(2,3)]")
            .unwrap();
        let text = format_mixed_spec(Some(2), &s);
        assert!(text.starts_with("# n: 2\n1/1 3 1\n5/4 2 2\n"));
        let back = parse_spec(&text).unwrap();
        assert_eq!(back.n, Some(2));
        assert_eq!(back.mixed().unwrap(), &s);
        let plain = format_spec(None, &s.project());
        let back = parse_spec(&plain).unwrap();
        assert_eq!(back.plain(), s.project());
        assert!(back.mixed().is_err());
    }

    #[test]
    fn spec_rejects_garbage() {
        assert!(parse_spec("1/2 0 1\n1/3 1\n").is_err());
        assert!(parse_spec("1/2 x 1\n").is_err());
        assert!(parse_spec("1/0 0 1\n").is_err());
        assert!(parse_spec("1 2 3 4\n").is_err());
        assert_eq!(parse_spec("# only a comment\n\n").unwrap().mixed().unwrap().len(), 0);
    }

    #[test]
    fn poly_round_trip() {
        let m = parse_poly("# x^3 + y^3 + z^4\n3 0 0\n0 3 0\n0 0 4\n").unwrap();
        assert_eq!(m.nvars, 3);
        assert!(m.coefficients.is_none());
        assert_eq!(parse_poly(&format_poly(&m)).unwrap(), m);
        let c = parse_poly("5 0 1/1\n0 5 -5/1\n1 1\n").unwrap();
        assert_eq!(c.coefficients.as_ref().unwrap(), &vec![rat(1, 1), rat(-5, 1), rat(1, 1)]);
        assert_eq!(parse_poly(&format_poly(&c)).unwrap(), c);
        assert!(parse_poly("1 2\n3\n").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn nodes_round_trip() {
        let f = NodesFile { conductor: 5, nodes: dwork_nodes() };
        let text = format_nodes(&f);
        assert_eq!(parse_nodes(&text).unwrap(), f);
        assert!(parse_nodes("1,zeta\n").is_err());
        let q = parse_nodes("1,0,0\n0,1/2,-3\n").unwrap();
        assert_eq!(q.conductor, 1);
        assert_eq!(q.nodes[1][1], ZetaCoord::rational(rat(1, 2)));
    }
}
