//! Run any pipeline on a config file:
//! `cargo run --example run_pipeline -- configs/kummer.toml kummer`.

use hodge_obstruct::pipeline::{self, CoefficientMode, PipelineConfig};

fn main() -> hodge_obstruct::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "configs/default.toml".into());
    let which = args.next().unwrap_or_else(|| "theorem-even".into());
    let cfg = PipelineConfig::load(path.as_ref())?;
    let report = match which.as_str() {
        "theorem-odd" => pipeline::pipeline_theorem_odd(&cfg),
        "deligne-q" => pipeline::pipeline_deligne(&cfg, CoefficientMode::Q),
        "deligne-c" => pipeline::pipeline_deligne(&cfg, CoefficientMode::C),
        "kummer" => pipeline::pipeline_kummer(&cfg),
        _ => pipeline::pipeline_theorem_even(&cfg),
    };
    print!("{}", report.to_text());
    Ok(())
}
