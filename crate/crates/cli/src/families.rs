use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context};
use skewwalk_core::generators::{
    blow_up_cycle, glued_tournaments, regime_instance, regular_tournament, GlueSpec,
};
use skewwalk_core::OrientedGraph;

pub type Params = BTreeMap<String, usize>;

/// Parses `k=5,m=2`.
pub fn parse_params(text: &str) -> anyhow::Result<Params> {
    let mut params = Params::new();
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter `{pair}` is not of the form name=value"))?;
        let value = value
            .trim()
            .parse()
            .with_context(|| format!("parameter `{name}` needs a nonnegative integer"))?;
        params.insert(name.trim().to_string(), value);
    }
    Ok(params)
}

fn take(params: &Params, family: &str, name: &str) -> anyhow::Result<usize> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| anyhow!("family `{family}` needs parameter `{name}`"))
}

pub fn build(family: &str, params: &Params, seed: u64) -> anyhow::Result<OrientedGraph> {
    let expected: &[&str] = match family {
        "blowup" => &["k", "m"],
        "tournament" => &["m"],
        "glued" => &["k", "ell"],
        "regime" => &["k", "n"],
        other => bail!("unknown family `{other}` (blowup, tournament, glued, regime)"),
    };
    if let Some(extra) = params.keys().find(|k| !expected.contains(&k.as_str())) {
        bail!("family `{family}` does not take parameter `{extra}`");
    }
    let g = match family {
        "blowup" => blow_up_cycle(take(params, family, "k")?, take(params, family, "m")?)?,
        "tournament" => regular_tournament(take(params, family, "m")?)?,
        "glued" => glued_tournaments(GlueSpec {
            k: take(params, family, "k")?,
            ell: take(params, family, "ell")?,
        })?,
        _ => regime_instance(take(params, family, "k")?, take(params, family, "n")?, seed)?,
    };
    Ok(g)
}
