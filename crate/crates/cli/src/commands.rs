use std::fs;
use std::io::{self, Write};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use szlob_core::flow::{
    mux, write_fits, write_flow, write_ks_table, write_pdf, write_quotes, write_samples, write_trades,
    write_virtual_prices, FlowMeta, StockCode,
};
use szlob_core::market::{Side, TickPrice, TradingPhase};
use szlob_core::relprice::{samples_from_day, RelPriceSample};
use szlob_core::stats::{
    compare_samples, conditional_pdfs, estimate_pdf, fit_power_law, Binning, ContextKey, FitOptions, KsComparison,
};
use szlob_core::synth::{generate_day, stock_rng, GeneratorConfig};

use crate::files::{create, out_dir, prev_close, replay_flow, samples};
use crate::{AnalyzeArgs, ConditionArgs, FitArgs, ReplayArgs, SideArg, SignArg, SimulateArgs};

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Buy => "buy",
        Side::Sell => "sell",
    }
}

fn sides(arg: Option<SideArg>) -> Vec<Side> {
    match arg {
        Some(s) => vec![s.into()],
        None => vec![Side::Buy, Side::Sell],
    }
}

pub fn replay(args: &ReplayArgs) -> Result<()> {
    let prev_close = prev_close(&args.flow, args.prev_close)?;
    let days = replay_flow(&args.flow, prev_close)?;
    out_dir(&args.out)?;

    let trades = days.iter().flat_map(|(c, r)| r.trades.iter().map(move |t| (*c, t)));
    write_trades(create(&args.out.join("trades.csv"))?, trades)?;
    let quotes = days.iter().flat_map(|(c, r)| r.quotes.iter().map(move |q| (*c, q)));
    write_quotes(create(&args.out.join("quotes.csv"))?, quotes)?;
    let virt = days.iter().flat_map(|(c, r)| r.virtual_prices.iter().map(move |v| (*c, v)));
    write_virtual_prices(create(&args.out.join("virtual_prices.csv"))?, virt)?;

    let count = |f: fn(&szlob_core::auction::DayRecord) -> usize| days.iter().map(|(_, r)| f(r)).sum::<usize>();
    println!(
        "{} stocks, {} placements, {} trades, {} rejected events",
        days.len(),
        count(|r| r.placements.len()),
        count(|r| r.trades.len()),
        count(|r| r.rejections.len()),
    );
    Ok(())
}

pub fn analyze(args: &AnalyzeArgs) -> Result<()> {
    if args.window == 0 {
        bail!(crate::UsageError("--window must be positive".into()));
    }
    let mut pooled: Vec<RelPriceSample> = Vec::new();
    let mut stocks = 0;
    for flow in &args.flows {
        let prev_close = prev_close(flow, args.prev_close)?;
        let days = replay_flow(flow, prev_close)?;
        stocks += days.len();
        let per_stock: Vec<Vec<RelPriceSample>> =
            days.par_iter().map(|(_, record)| samples_from_day(record, args.window)).collect();
        pooled.extend(per_stock.into_iter().flatten());
    }
    out_dir(&args.out)?;
    write_samples(create(&args.out.join("samples.csv"))?, &pooled)?;

    println!("{stocks} stocks, {} samples", pooled.len());
    for phase in TradingPhase::ALL {
        for side in [Side::Buy, Side::Sell] {
            let xs: Vec<f64> = pooled.iter().filter(|s| s.phase == phase && s.side == side).map(|s| s.x).collect();
            if xs.is_empty() {
                continue;
            }
            let pdf = estimate_pdf(&xs, &Binning::default())?;
            let name = format!("pdf_{}_{}.csv", phase.code(), side_name(side));
            write_pdf(create(&args.out.join(&name))?, &pdf)?;
            println!("{phase} {}: {} samples, zero atom {:.4}", side_name(side), xs.len(), pdf.zero_atom());
        }
    }
    Ok(())
}

pub fn fit(args: &FitArgs) -> Result<()> {
    let all = samples(&args.samples)?;
    let phase = TradingPhase::from(args.phase);
    let signs = match args.sign {
        Some(s) => vec![s],
        None => vec![SignArg::Pos, SignArg::Neg],
    };
    let opts = FitOptions { bins_per_decade: args.bins_per_decade, ..FitOptions::default() };
    let mut fits = Vec::new();
    for side in sides(args.side) {
        for &sign in &signs {
            let (factor, mark) = if sign == SignArg::Pos { (1.0, '+') } else { (-1.0, '-') };
            let xs: Vec<f64> =
                all.iter().filter(|s| s.phase == phase && s.side == side).map(|s| factor * s.x).collect();
            let label = format!("{phase} {}{mark}", side_name(side));
            let fit = fit_power_law(&xs, args.xlo, args.xhi, &opts).with_context(|| format!("fitting {label}"))?;
            fits.push((label, fit));
        }
    }
    let rows = || fits.iter().map(|(l, f)| (l.as_str(), f));
    write_fits(io::stdout().lock(), rows())?;
    if let Some(out) = &args.out {
        write_fits(create(out)?, rows())?;
    }
    Ok(())
}

pub fn condition(args: &ConditionArgs) -> Result<()> {
    if args.groups < 2 {
        bail!(crate::UsageError("--groups must be at least 2".into()));
    }
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        bail!(crate::UsageError("--alpha must lie in (0, 1)".into()));
    }
    let key = ContextKey::from(args.key);
    let phase = TradingPhase::from(args.phase);
    let all = samples(&args.samples)?;
    out_dir(&args.out)?;

    let mut table: Vec<(String, usize, usize, KsComparison)> = Vec::new();
    let mut ranges = String::from("side,group,context_lo,context_hi,samples\n");
    for side in sides(args.side) {
        let usable: Vec<RelPriceSample> = all
            .iter()
            .filter(|s| s.phase == phase && s.side == side && key.value(s).is_some())
            .copied()
            .collect();
        let groups = conditional_pdfs(&usable, key, args.groups, &Binning::default())
            .with_context(|| format!("{phase} {} samples with a {key}", side_name(side)))?;
        for (g, group) in groups.iter().enumerate() {
            let name = format!("pdf_{key}_{}_{}.csv", side_name(side), g + 1);
            write_pdf(create(&args.out.join(name))?, &group.pdf)?;
            ranges.push_str(&format!(
                "{},{},{},{},{}\n",
                side_name(side),
                g + 1,
                group.context_lo,
                group.context_hi,
                group.xs.len()
            ));
        }
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let k = compare_samples(&groups[i].xs, &groups[j].xs, args.alpha)?;
                table.push((format!("{} {key}", side_name(side)), i + 1, j + 1, k));
            }
        }
    }
    fs::write(args.out.join(format!("groups_{key}.csv")), ranges).context("writing group ranges")?;
    let rows = || table.iter().map(|(l, a, b, k)| (l.as_str(), *a, *b, k));
    write_ks_table(create(&args.out.join(format!("ks_{key}.csv")))?, rows())?;
    write_ks_table(io::stdout().lock(), rows())?;
    let rejected = table.iter().filter(|r| !r.3.passes()).count();
    eprintln!("{} of {} pairs differ at the {} level", rejected, table.len(), args.alpha);
    Ok(())
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            GeneratorConfig::parse(&text).with_context(|| format!("in {}", path.display()))?
        }
        None => GeneratorConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(counts) = args.counts {
        config.counts = counts;
    }
    if args.prev_close == 0 {
        bail!(crate::UsageError("--prev-close must be positive".into()));
    }
    let prev_close = TickPrice(args.prev_close);

    let streams = (0..args.stocks)
        .into_par_iter()
        .map(|i| generate_day(&config, prev_close, config.counts, &mut stock_rng(config.seed, i as u64)))
        .collect::<Result<Vec<_>, _>>()?;
    let tagged: Vec<_> =
        streams.iter().enumerate().map(|(i, s)| (StockCode::from_index(i), s.events.as_slice())).collect();
    let records = mux(&tagged);

    let mut out = create(&args.out)?;
    write_flow(&records, &mut out)?;
    out.flush()?;
    let meta = FlowMeta { prev_close, stocks: args.stocks, config };
    let sidecar = FlowMeta::sidecar_path(&args.out);
    fs::write(&sidecar, meta.to_text()).with_context(|| format!("writing {}", sidecar.display()))?;
    println!("{} records for {} stocks written to {}", records.len(), args.stocks, args.out.display());
    Ok(())
}
