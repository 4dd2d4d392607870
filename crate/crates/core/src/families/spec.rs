//! Family spec strings such as `gp:d=2,(3)^inf,p=1` or `gm:oriented`.

use std::collections::BTreeSet;

use crate::dynamics::{QuadraticReal, Radix, Schedule};
use crate::words::{Alphabet, UltWord};

use super::{
    gdelta, gm, go_graph, gp_chain, graph_from_system, k0_graph, ka_graph, odd_cycle_family, periodic_orbit_graph,
    rank_subshift, restricted_orbit_graph, t_graph, BlockSchedule, FamilyError, OrbitSet, SymbolicGraph, System,
    DEFAULT_CAP,
};

/// A parsed spec string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub oriented: bool,
}

impl FamilySpec {
    pub fn parse(s: &str) -> Result<FamilySpec, FamilyError> {
        let s = s.trim();
        let (s, oriented) = match s.strip_suffix(":oriented") {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = Vec::new();
        for part in split_params(rest) {
            let (k, v) = part.split_once('=').ok_or_else(|| FamilyError::BadParam {
                family: name.to_string(),
                name: part.clone(),
                reason: "expected name=value".into(),
            })?;
            params.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(FamilySpec { name: name.to_string(), params, oriented })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str, FamilyError> {
        self.get(key).ok_or_else(|| FamilyError::MissingParam { family: self.name.clone(), name: key.into() })
    }

    fn bad(&self, key: &str, reason: impl ToString) -> FamilyError {
        FamilyError::BadParam { family: self.name.clone(), name: key.into(), reason: reason.to_string() }
    }

    fn number(&self, key: &str) -> Result<usize, FamilyError> {
        let v = self.require(key)?;
        v.parse().map_err(|_| self.bad(key, format!("expected a nonnegative integer, got `{v}`")))
    }

    fn radix(&self) -> Result<Radix, FamilyError> {
        Radix::parse(self.require("d")?).map_err(|e| self.bad("d", e))
    }

    fn cap(&self, default: usize) -> Result<usize, FamilyError> {
        match self.get("cap") {
            Some(_) => self.number("cap"),
            None => Ok(default),
        }
    }
}

fn is_ident_start(s: &str) -> bool {
    let mut it = s.chars();
    match it.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    for c in it {
        if c == '=' {
            return true;
        }
        if !(c.is_ascii_alphanumeric() || c == '_') {
            return false;
        }
    }
    false
}

/// Splits `a=1,2,b=(3)^inf` at the commas that start a new `name=`.
pub fn split_params(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 && is_ident_start(&s[i + 1..]) {
            out.push(std::mem::take(&mut cur));
            continue;
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// Builds the family named by `spec`. `cap` overrides the letter cap of families
/// over ω.
pub fn parse_family(spec: &str, cap: Option<usize>) -> Result<SymbolicGraph, FamilyError> {
    let f = FamilySpec::parse(spec)?;
    let cap_for = |f: &FamilySpec| -> Result<usize, FamilyError> { Ok(cap.unwrap_or(f.cap(DEFAULT_CAP)?)) };
    let g = match f.name.as_str() {
        "odd-cycle" => odd_cycle_family(f.number("p")?),
        "gm" => gm(cap_for(&f)?),
        "gdelta" => {
            let delta = UltWord::parse(f.require("delta")?, &Alphabet::numerals(2)).map_err(|e| f.bad("delta", e))?;
            gdelta(&delta, cap_for(&f)?)
        }
        "go-plus" => {
            let schedule = match f.get("zeta") {
                Some(z) => BlockSchedule::Zeta(Schedule::parse(z).map_err(|e| f.bad("zeta", e))?),
                None => BlockSchedule::Default,
            };
            let system = match f.get("sturmian") {
                Some(r) => System::Sturmian(QuadraticReal::parse(r).map_err(|e| f.bad("sturmian", e))?),
                None => System::Odometer(f.radix()?),
            };
            graph_from_system(system, schedule)?
        }
        "graph-o" => go_graph(&f.radix()?)?,
        "t" => t_graph(cap_for(&f)?),
        "k0" => k0_graph(),
        "rank-subshift" => rank_subshift(f.number("n")?)?,
        "gp" => gp_chain(&f.radix()?, f.number("p")?)?,
        "orbit" => {
            let s = OrbitSet::parse(f.require("S")?).map_err(|e| f.bad("S", e))?;
            restricted_orbit_graph(&f.radix()?, &s)?
        }
        "ka" => {
            let a: BTreeSet<usize> = match f.get("A") {
                None => BTreeSet::new(),
                Some(v) => v
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| f.bad("A", format!("bad integer `{t}`"))))
                    .collect::<Result<_, _>>()?,
            };
            ka_graph(&a)?
        }
        "triangle" => periodic_orbit_graph(&[0, 1, 2])?,
        "periodic" => {
            let w = f.require("w")?;
            let letters: Vec<u16> = w
                .chars()
                .filter(|c| *c != ',')
                .map(|c| c.to_digit(10).map(|d| d as u16).ok_or_else(|| f.bad("w", "digits only")))
                .collect::<Result<_, _>>()?;
            if letters.is_empty() {
                return Err(f.bad("w", "empty word"));
            }
            periodic_orbit_graph(&letters)?
        }
        _ => return Err(FamilyError::UnknownFamily(spec.to_string())),
    };
    if f.oriented {
        g.orient()
    } else {
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_split_at_names_only() {
        assert_eq!(split_params("d=2,(3)^inf,p=1"), vec!["d=2,(3)^inf", "p=1"]);
        assert_eq!(split_params("A=0,2"), vec!["A=0,2"]);
        assert_eq!(split_params("d=(3)^inf,S=sa{0,2}"), vec!["d=(3)^inf", "S=sa{0,2}"]);
        let f = FamilySpec::parse("gm:oriented").unwrap();
        assert!(f.oriented && f.params.is_empty());
    }
}
