use crate::record::VerificationRecord;
use crate::ForgeError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub const CSV_HEADER: [&str; 8] = ["theorem", "p", "params", "claimed", "observed", "passed", "witness", "elapsed_ms"];

pub fn render(records: &[VerificationRecord], format: Format) -> Result<String, ForgeError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(records),
    }
}

fn render_csv(records: &[VerificationRecord]) -> Result<String, ForgeError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.theorem.to_owned(),
            r.p.to_string(),
            r.params.to_cell(),
            r.claimed.to_string(),
            r.observed.to_string(),
            r.passed.to_string(),
            r.witness.clone().unwrap_or_default(),
            r.elapsed_ms.map(|e| e.to_string()).unwrap_or_default(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| ForgeError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Params;

    fn sample() -> VerificationRecord {
        VerificationRecord::new("main", 7, Params::new().with("alpha", 2).with("beta", 1), 4, 4, true)
            .witness("[2,5]")
    }

    #[test]
    fn csv_header_without_records() {
        assert_eq!(render(&[], Format::Csv).unwrap(), "theorem,p,params,claimed,observed,passed,witness,elapsed_ms\n");
    }

    #[test]
    fn csv_row() {
        let out = render(&[sample()], Format::Csv).unwrap();
        assert_eq!(out.lines().nth(1).unwrap(), "main,7,alpha=2;beta=1,4,4,true,\"[2,5]\",");
    }

    #[test]
    fn json_is_single_element_array_with_stable_order() {
        let out = render(&[sample()], Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
        let keys = ["\"theorem\"", "\"p\"", "\"params\"", "\"claimed\"", "\"observed\"", "\"passed\"", "\"witness\"", "\"elapsed_ms\""];
        let positions: Vec<usize> = keys.iter().map(|k| out.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }
}
