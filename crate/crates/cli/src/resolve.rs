use std::path::PathBuf;

use clap::Args;

use piradical::catalog::{named_entry, pgammal2_9};
use piradical::genwidth::AlmostSimpleContext;
use piradical::group::PermGroup;
use piradical::groupspec::load_spec;
use piradical::perm::{parse_cycles, Permutation};
use piradical::primeset::PrimeSet;

use crate::error::CliError;

#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Catalog group: S5, A6, C6, D5, psl2(7), pgl2(9), pgammal2(9), or
    /// A6:pgammal for A6 inside PΓL(2,9)
    #[arg(long)]
    pub group: Option<String>,

    /// Group-spec file
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

/// A group with optional socle, default automorphism and named elements.
pub struct Resolved {
    pub label: String,
    pub group: PermGroup,
    pub socle: Option<PermGroup>,
    pub aut: Option<Permutation>,
    pub named: Vec<(String, Permutation)>,
    pub pi: Option<PrimeSet>,
}

pub fn resolve(source: &Source) -> Result<Resolved, CliError> {
    if let Some(path) = &source.spec {
        let loaded = load_spec(path)?;
        let aut = loaded
            .spec
            .aut
            .as_ref()
            .and_then(|a| loaded.spec.generator(a).cloned());
        return Ok(Resolved {
            label: loaded.spec.name.clone(),
            named: loaded
                .spec
                .generators
                .iter()
                .map(|g| (g.name.clone(), g.perm.clone()))
                .collect(),
            group: loaded.group,
            socle: loaded.socle,
            aut,
            pi: loaded.spec.pi,
        });
    }
    let name = source.group.as_deref().expect("clap enforces a source");
    if let Some(base) = name.strip_suffix(":pgammal") {
        if base != "A6" {
            return Err(CliError::Input(format!("{name}: only A6:pgammal is available")));
        }
        let pg = pgammal2_9()?;
        return Ok(Resolved {
            label: name.to_string(),
            named: vec![
                ("outer-involution".into(), pg.outer_involution().clone()),
                ("frobenius".into(), pg.field_involution().clone()),
            ],
            group: pg.full,
            socle: Some(pg.socle),
            aut: None,
            pi: None,
        });
    }
    let entry = named_entry(name)?;
    Ok(Resolved {
        label: entry.name,
        socle: Some(entry.group.clone()),
        group: entry.group,
        aut: None,
        named: Vec::new(),
        pi: None,
    })
}

impl Resolved {
    /// The context `⟨L, x⟩` for `x` given as a named element or in cycle
    /// notation, falling back to the group-spec file's `aut`.
    pub fn context(&self, aut: Option<&str>) -> Result<AlmostSimpleContext, CliError> {
        let socle = self
            .socle
            .clone()
            .ok_or_else(|| CliError::Input(format!("{} has no socle", self.label)))?;
        let x = match aut {
            Some(text) => match self.named.iter().find(|(n, _)| n == text.trim()) {
                Some((_, p)) => p.clone(),
                None => parse_cycles(text, socle.degree())?,
            },
            None => self
                .aut
                .clone()
                .ok_or_else(|| CliError::Input("no automorphism given (use --aut)".into()))?,
        };
        Ok(AlmostSimpleContext::new(socle, x)?)
    }

    pub fn pi(&self, flag: Option<&str>) -> Result<PrimeSet, CliError> {
        match (flag, &self.pi) {
            (Some(text), _) => Ok(text.parse()?),
            (None, Some(pi)) => Ok(pi.clone()),
            (None, None) => Err(CliError::Input("no prime set given (use --pi)".into())),
        }
    }
}
