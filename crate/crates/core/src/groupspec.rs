//! Line-oriented group description files.
//!
//! ```text
//! # A5 extended by a transposition
//! name S5
//! degree 5
//! gen a (1 2 3)
//! gen b (1 2 3 4 5)
//! gen t (1 2)
//! socle a b
//! aut t
//! pi 2,3
//! ```
//!
//! `name` and `degree` are required and `degree` must precede every `gen`.
//! `socle` lists generator names spanning a normal subgroup, `aut` names the
//! automorphism `x` of an almost simple context.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::genwidth::AlmostSimpleContext;
use crate::group::PermGroup;
use crate::perm::{parse_cycles, Permutation, MAX_DEGREE};
use crate::primeset::PrimeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGenerator {
    pub name: String,
    /// Cycle notation as written in the file.
    pub text: String,
    pub perm: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<NamedGenerator>,
    pub socle: Option<Vec<String>>,
    pub aut: Option<String>,
    pub pi: Option<PrimeSet>,
}

/// A validated spec with its groups built.
#[derive(Clone, Debug)]
pub struct LoadedSpec {
    pub spec: GroupSpec,
    pub group: PermGroup,
    pub socle: Option<PermGroup>,
    pub context: Option<AlmostSimpleContext>,
}

impl GroupSpec {
    pub fn generator(&self, name: &str) -> Option<&Permutation> {
        self.generators.iter().find(|g| g.name == name).map(|g| &g.perm)
    }

    /// Builds the groups and checks that the socle is normal and that `aut`
    /// gives a valid context.
    pub fn build(&self) -> Result<LoadedSpec> {
        let invalid = |msg: String| Error::InvariantViolation(msg);
        let perms: Vec<Permutation> = self.generators.iter().map(|g| g.perm.clone()).collect();
        let group = PermGroup::generated_by(self.degree, &perms)?;
        let socle = match &self.socle {
            None => None,
            Some(names) => {
                let gens: Vec<Permutation> = names
                    .iter()
                    .map(|n| self.generator(n).cloned().ok_or_else(|| invalid(format!("unknown generator {n:?}"))))
                    .collect::<Result<_>>()?;
                let socle = PermGroup::generated_by(self.degree, &gens)?;
                if !socle.is_normalized_by(group.generators()) {
                    return Err(invalid("socle is not normal in the group".into()));
                }
                Some(socle)
            }
        };
        let context = match (&socle, &self.aut) {
            (Some(l), Some(a)) => {
                let x = self
                    .generator(a)
                    .ok_or_else(|| invalid(format!("unknown generator {a:?}")))?;
                Some(AlmostSimpleContext::new(l.clone(), x.clone()).map_err(|e| invalid(e.to_string()))?)
            }
            (None, Some(_)) => return Err(invalid("aut given without socle".into())),
            _ => None,
        };
        Ok(LoadedSpec {
            spec: self.clone(),
            group,
            socle,
            context,
        })
    }
}

fn parse_err(line: usize, column: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        reason: reason.into(),
    }
}

/// Splits off the first whitespace-delimited word, returning it, its byte
/// offset within `s`, and the remainder.
fn next_word(s: &str, base: usize) -> Option<(&str, usize, &str, usize)> {
    let start = s.len() - s.trim_start().len();
    let rest = &s[start..];
    if rest.is_empty() {
        return None;
    }
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    Some((&rest[..end], base + start, &rest[end..], base + start + end))
}

fn valid_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '.')
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut generators: Vec<NamedGenerator> = Vec::new();
    let mut socle: Option<(Vec<String>, usize)> = None;
    let mut aut: Option<(String, usize, usize)> = None;
    let mut pi: Option<PrimeSet> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let Some((key, key_at, rest, rest_at)) = next_word(content, 0) else {
            continue;
        };
        let col = |offset: usize| content[..offset].chars().count() + 1;
        let value = rest.trim();
        let value_at = rest_at + (rest.len() - rest.trim_start().len());
        let duplicate = |what: &str| parse_err(line_no, col(key_at), format!("duplicate {what}"));
        if value.is_empty() {
            return Err(parse_err(line_no, col(rest_at), format!("missing value for {key:?}")));
        }
        match key {
            "name" => {
                if name.replace(value.to_string()).is_some() {
                    return Err(duplicate("name"));
                }
            }
            "degree" => {
                let d: usize = value
                    .parse()
                    .ok()
                    .filter(|&d| d > 0)
                    .ok_or_else(|| parse_err(line_no, col(value_at), "degree must be a positive integer"))?;
                if d > MAX_DEGREE {
                    return Err(parse_err(line_no, col(value_at), format!("degree exceeds {MAX_DEGREE}")));
                }
                if degree.replace(d).is_some() {
                    return Err(duplicate("degree"));
                }
            }
            "gen" => {
                let d = degree.ok_or_else(|| parse_err(line_no, col(key_at), "gen before degree"))?;
                let (ident, ident_at, cycles, cycles_at) = next_word(rest, rest_at).unwrap();
                if !valid_ident(ident) {
                    return Err(parse_err(line_no, col(ident_at), format!("invalid generator name {ident:?}")));
                }
                if generators.iter().any(|g| g.name == ident) {
                    return Err(parse_err(line_no, col(ident_at), format!("duplicate generator {ident:?}")));
                }
                let cycles_at = cycles_at + (cycles.len() - cycles.trim_start().len());
                let cycles = cycles.trim();
                let perm = parse_cycles(cycles, d).map_err(|e| {
                    let offset = match e {
                        Error::MalformedCycle { offset, .. } => offset,
                        _ => 0,
                    };
                    parse_err(line_no, col(cycles_at) + cycles.get(..offset).map_or(0, |s| s.chars().count()), e.to_string())
                })?;
                generators.push(NamedGenerator {
                    name: ident.to_string(),
                    text: cycles.to_string(),
                    perm,
                });
            }
            "socle" => {
                if socle.is_some() {
                    return Err(duplicate("socle"));
                }
                socle = Some((value.split_whitespace().map(str::to_string).collect(), line_no));
            }
            "aut" => {
                if aut.is_some() {
                    return Err(duplicate("aut"));
                }
                if value.split_whitespace().count() != 1 {
                    return Err(parse_err(line_no, col(value_at), "aut takes one generator name"));
                }
                aut = Some((value.to_string(), line_no, col(value_at)));
            }
            "pi" => {
                let set = value
                    .parse::<PrimeSet>()
                    .map_err(|e| parse_err(line_no, col(value_at), e.to_string()))?;
                if pi.replace(set).is_some() {
                    return Err(duplicate("pi"));
                }
            }
            other => {
                return Err(parse_err(line_no, col(key_at), format!("unknown keyword {other:?}")));
            }
        }
    }

    let end = text.lines().count().max(1);
    let name = name.ok_or_else(|| parse_err(end, 1, "missing name"))?;
    let degree = degree.ok_or_else(|| parse_err(end, 1, "missing degree"))?;
    let known: HashMap<&str, ()> = generators.iter().map(|g| (g.name.as_str(), ())).collect();
    if let Some((names, line)) = &socle {
        if let Some(bad) = names.iter().find(|n| !known.contains_key(n.as_str())) {
            return Err(parse_err(*line, 1, format!("socle refers to unknown generator {bad:?}")));
        }
    }
    if let Some((a, line, column)) = &aut {
        if !known.contains_key(a.as_str()) {
            return Err(parse_err(*line, *column, format!("aut refers to unknown generator {a:?}")));
        }
    }
    Ok(GroupSpec {
        name,
        degree,
        generators,
        socle: socle.map(|(s, _)| s),
        aut: aut.map(|(a, _, _)| a),
        pi,
    })
}

/// Parses and builds a spec.
pub fn load_spec_str(text: &str) -> Result<LoadedSpec> {
    parse_spec(text)?.build()
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<LoadedSpec> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    load_spec_str(&text)
}

/// Renders a spec back to text. Comments and blank lines are not kept.
pub fn write_spec(spec: &GroupSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name {}", spec.name);
    let _ = writeln!(out, "degree {}", spec.degree);
    for g in &spec.generators {
        let _ = writeln!(out, "gen {} {}", g.name, g.text);
    }
    if let Some(s) = &spec.socle {
        let _ = writeln!(out, "socle {}", s.join(" "));
    }
    if let Some(a) = &spec.aut {
        let _ = writeln!(out, "aut {a}");
    }
    if let Some(pi) = &spec.pi {
        let _ = writeln!(out, "pi {pi}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A5_S5: &str = "\
# A5 extended by a transposition
name S5
degree 5
gen a (1 2 3)
gen b (1 2 3 4 5)
gen t (1 2)
socle a b
aut t
pi 2,3
";

    #[test]
    fn loads_context() {
        let loaded = load_spec_str(A5_S5).unwrap();
        assert_eq!(loaded.group.order().to_u128(), Some(120));
        assert_eq!(loaded.socle.as_ref().unwrap().order().to_u128(), Some(60));
        let ctx = loaded.context.unwrap();
        assert_eq!(ctx.ambient().order().to_u128(), Some(120));
        assert_eq!(loaded.spec.pi, Some("2,3".parse().unwrap()));
    }

    #[test]
    fn round_trip() {
        let spec = parse_spec(A5_S5).unwrap();
        let written = write_spec(&spec);
        assert_eq!(parse_spec(&written).unwrap(), spec);
        let strip = |s: &str| -> Vec<String> {
            s.lines()
                .map(|l| l.split('#').next().unwrap().split_whitespace().collect::<Vec<_>>().join(" "))
                .filter(|l| !l.is_empty())
                .collect()
        };
        assert_eq!(strip(&written), strip(A5_S5));
    }

    #[test]
    fn malformed_cycle_position() {
        let text = "name x\ndegree 4\ngen a (1 2\n";
        match parse_spec(text).unwrap_err() {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column >= 7);
            }
            e => panic!("{e:?}"),
        }
        let text = "name x\ndegree 4\ngen a (1 9)\n";
        assert!(matches!(parse_spec(text).unwrap_err(), Error::Parse { line: 3, .. }));
    }

    #[test]
    fn structural_errors() {
        let cases = [
            ("degree 3\n", 1),
            ("name x\n", 1),
            ("name x\ngen a (1 2)\ndegree 3\n", 2),
            ("name x\ndegree 3\nfoo bar\n", 3),
            ("name x\ndegree 3\ngen a (1 2)\ngen a (2 3)\n", 4),
            ("name x\ndegree 3\ngen a (1 2)\naut b\n", 4),
            ("name x\ndegree 3\npi 2,4\n", 3),
            ("name x\ndegree 0\n", 2),
            ("name x\ndegree 4000000000\n", 2),
            ("name x\nname y\ndegree 3\n", 2),
        ];
        for (text, expected_line) in cases {
            match parse_spec(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, expected_line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn non_normal_socle_is_rejected() {
        let text = "name x\ndegree 4\ngen a (1 2)\ngen b (1 2 3 4)\nsocle a\n";
        assert!(matches!(load_spec_str(text).unwrap_err(), Error::InvariantViolation(_)));
    }

    #[test]
    fn centralizing_aut_is_rejected() {
        let text = "name x\ndegree 7\ngen a (1 2 3)\ngen b (1 2 3 4 5)\ngen t (6 7)\nsocle a b\naut t\n";
        assert!(matches!(load_spec_str(text).unwrap_err(), Error::InvariantViolation(_)));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "\n  # header\nname  g # trailing\n\ndegree 3\ngen r (1 2 3)  # rotation\n";
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.name, "g");
        assert_eq!(spec.generators[0].text, "(1 2 3)");
    }
}
