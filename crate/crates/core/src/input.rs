//! Input files, recognised by their first non-comment line.
//!
//! A presentation starts with `gens:` (see [`Presentation::parse`]). A
//! permutation list starts with `perm:` and an optional degree, followed by
//! one generator per line in 1-based cycle notation, optionally named:
//!
//! ```text
//! perm: 6
//! # A_6
//! rho0 = (1,2)(3,4)
//! rho1 = (2,6)(3,5)
//! ```
//!
//! Generators that are all involutions are read as a C-group, anything else
//! as the rotations `α_1..α_{r-1}` of a C⁺-group.

use crate::cgroups::{CGroup, CPlusGroup};
use crate::error::{Error, Result};
use crate::fp::{FiniteQuotient, Presentation};
use crate::geometry::CosetGeometry;
use crate::perm::Permutation;
use crate::Caps;

#[derive(Debug, Clone)]
pub enum Input {
    Presentation(Presentation),
    Permutations {
        names: Vec<String>,
        generators: Vec<Permutation>,
    },
}

#[derive(Debug, Clone)]
pub enum Generators {
    Involutions(CGroup),
    Rotations(CPlusGroup),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_perms(text: &str) -> Result<Input> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().expect("caller checked the header");
    let rest = header["perm:".len()..].trim();
    let degree = if rest.is_empty() {
        None
    } else {
        Some(rest.parse::<usize>().map_err(|_| Error::Parse {
            line: hline,
            message: format!("expected a degree after `perm:`, found {rest:?}"),
        })?)
    };
    let mut entries = Vec::new();
    for (line, l) in lines {
        let (name, cycles) = match l.split_once('=') {
            Some((n, c)) => (n.trim().to_string(), c.trim()),
            None => (format!("g{}", entries.len()), l),
        };
        entries.push((line, name, cycles.to_string()));
    }
    if entries.is_empty() {
        return Err(Error::Parse {
            line: hline,
            message: "no generators listed".into(),
        });
    }
    let degree = match degree {
        Some(d) => d,
        None => {
            let mut max = 1;
            for (line, _, c) in &entries {
                let p = Permutation::parse_cycles(c, None).map_err(|e| Error::Parse {
                    line: *line,
                    message: e.to_string(),
                })?;
                max = max.max(p.degree());
            }
            max
        }
    };
    let mut names = Vec::new();
    let mut generators = Vec::new();
    for (line, name, c) in entries {
        let p = Permutation::parse_cycles(&c, Some(degree)).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        names.push(name);
        generators.push(p);
    }
    Ok(Input::Permutations { names, generators })
}

pub fn parse_input(text: &str) -> Result<Input> {
    match content_lines(text).next() {
        Some((_, l)) if l.starts_with("gens:") => {
            Ok(Input::Presentation(Presentation::parse(text)?))
        }
        Some((_, l)) if l.starts_with("perm:") => parse_perms(text),
        Some((line, l)) => Err(Error::Parse {
            line,
            message: format!("expected a `gens:` or `perm:` header, found {l:?}"),
        }),
        None => Err(Error::Parse {
            line: 0,
            message: "empty input".into(),
        }),
    }
}

impl Input {
    /// Concrete generators; presentations are enumerated first.
    pub fn generators(&self, caps: &Caps) -> Result<Generators> {
        let (group, gens) = match self {
            Input::Presentation(p) => {
                let q = FiniteQuotient::enumerate(p, caps.max_cosets)?;
                (Some(q.group().clone()), q.generator_images().to_vec())
            }
            Input::Permutations { generators, .. } => (None, generators.clone()),
        };
        if gens.iter().all(Permutation::is_involution) {
            Ok(Generators::Involutions(match group {
                Some(g) => CGroup::with_group(g, gens)?,
                None => CGroup::new(gens)?,
            }))
        } else {
            Ok(Generators::Rotations(match group {
                Some(g) => CPlusGroup::with_group(g, gens)?,
                None => CPlusGroup::new(gens)?,
            }))
        }
    }
}

impl Generators {
    /// The C-group geometry, or the rotation construction for C⁺-groups.
    pub fn geometry(&self, caps: &Caps) -> Result<CosetGeometry> {
        match self {
            Generators::Involutions(c) => CosetGeometry::from_cgroup(c, caps),
            Generators::Rotations(c) => CosetGeometry::from_cplus(c, caps),
        }
    }

    /// The rotations: given directly, or `ρ_0ρ_j` for a C-group.
    pub fn rotations(&self) -> CPlusGroup {
        match self {
            Generators::Involutions(c) => c.rotation_subgroup().0,
            Generators::Rotations(c) => c.clone(),
        }
    }
}
