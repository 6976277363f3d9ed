pub mod burgers;
pub mod dualz;
pub mod frozen;
pub mod legendre;
pub mod limitshape;
pub mod periods;
pub mod prepotential;
pub mod ronkin;
pub mod zinst;

use crate::CliError;

/// Parse a comma-separated float list.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("bad number '{t}': {e}")))
        })
        .collect()
}

/// Read and deserialize a JSON file.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}
