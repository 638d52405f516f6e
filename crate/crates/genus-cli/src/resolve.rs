//! Manifold name resolution: catalog lookup plus the parameterized
//! family constructors.

use genus_core::catalog::{self, CatalogFile, ManifoldModel};

pub enum ResolveError {
    Unknown(String),
    BadParameter(String),
}

fn need_n(n: Option<i64>, what: &str) -> Result<i64, ResolveError> {
    n.ok_or_else(|| ResolveError::BadParameter(format!("{what} requires --n")))
}

/// Resolve a manifold name against the catalog, falling back to the
/// parameterized constructors for family names (`xn`, `e2p`, `enk`,
/// `zn`, `vn`).
pub fn resolve_model(
    cat: &CatalogFile,
    name: &str,
    n: Option<i64>,
    m: Option<i64>,
) -> Result<ManifoldModel, ResolveError> {
    if let Some(model) = cat.get(name) {
        return Ok(model.clone());
    }
    let bad = |e: catalog::CatalogError| ResolveError::BadParameter(e.to_string());
    match name {
        "cp2x1" | "cp2x2" | "cp2x3" => {
            let k = name.as_bytes()[4] - b'0';
            catalog::model_cp2_blowups(k as u32).map_err(bad)
        }
        "cp2" => Ok(catalog::model_cp2()),
        "s2xs2" => Ok(catalog::model_s2xs2()),
        "k3" => Ok(catalog::model_k3()),
        "xn" => catalog::model_xn(need_n(n, "xn")?).map_err(bad),
        "e2p" => catalog::model_e2p(need_n(n, "e2p")?).map_err(bad),
        "enk" => {
            let n = need_n(n, "enk")?;
            let m = m.ok_or_else(|| ResolveError::BadParameter("enk requires --m".into()))?;
            if n < 0 || m < 0 {
                return Err(ResolveError::BadParameter("enk parameters must be positive".into()));
            }
            catalog::model_enk(n as u32, m as u32).map_err(bad)
        }
        "ap" => catalog::model_ap_family("ap", 1).map_err(bad),
        "bk" => catalog::model_bk_family("bk", 1).map_err(bad),
        "zn" => {
            let n = need_n(n, "zn")?;
            catalog::model_ap_family(&format!("zn-{n}"), n).map_err(bad)
        }
        "vn" => {
            let n = need_n(n, "vn")?;
            catalog::model_bk_family(&format!("vn-{n}"), n).map_err(bad)
        }
        other => {
            // x<k> style names for the twisted family
            if let Some(rest) = other.strip_prefix('x') {
                if let Ok(k) = rest.parse::<i64>() {
                    return catalog::model_xn(k).map_err(bad);
                }
            }
            Err(ResolveError::Unknown(other.to_string()))
        }
    }
}
