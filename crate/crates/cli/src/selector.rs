//! Subgroup selectors: `center`, `order=<k>:<i>`, `frattini`, `maxcyc`.

use std::fmt;
use std::str::FromStr;

use burnside_core::{center, BurnsideRing, Subgroup};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    Center,
    /// The `index`-th class (from 0) of subgroups of order `order`; its canonical representative.
    Order {
        order: usize,
        index: usize,
    },
    Frattini,
    MaxCyclic,
}

impl Selector {
    pub fn resolve(&self, ring: &BurnsideRing) -> Result<Subgroup, CliError> {
        let lat = ring.lattice();
        Ok(match *self {
            Selector::Center => center(ring.group()),
            Selector::Frattini => lat.frattini(),
            Selector::MaxCyclic => lat.max_cyclic_intersection(),
            Selector::Order { order, index } => {
                let class = ring.class_by_label(&format!("{order}:{index}"))?;
                ring.class_rep(class).clone()
            }
        })
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Center => f.write_str("center"),
            Selector::Frattini => f.write_str("frattini"),
            Selector::MaxCyclic => f.write_str("maxcyc"),
            Selector::Order { order, index } => write!(f, "order={order}:{index}"),
        }
    }
}

impl FromStr for Selector {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Selector, CliError> {
        let s = s.trim();
        let bad = || {
            CliError::Usage(format!(
                "unknown subgroup selector {s:?}; expected center, frattini, maxcyc or order=<k>:<i>"
            ))
        };
        match s {
            "center" => Ok(Selector::Center),
            "frattini" => Ok(Selector::Frattini),
            "maxcyc" => Ok(Selector::MaxCyclic),
            _ => {
                let rest = s.strip_prefix("order=").ok_or_else(bad)?;
                let (k, i) = rest.split_once(':').unwrap_or((rest, "0"));
                Ok(Selector::Order {
                    order: k.trim().parse().map_err(|_| bad())?,
                    index: i.trim().parse().map_err(|_| bad())?,
                })
            }
        }
    }
}
