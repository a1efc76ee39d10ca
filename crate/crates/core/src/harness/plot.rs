use super::{ExperimentRecord, HarnessError, SweepKindName};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Success fraction over decided trials against n, one polyline per
/// multiplier. Cells without decided trials are left out and noted in a
/// comment, as are cells whose timeouts exceed the warning fraction.
pub fn render_plot(records: &[ExperimentRecord]) -> Result<String, HarnessError> {
    let first = records.first().ok_or(HarnessError::NoRecords)?;
    if let Some(r) = records.iter().find(|r| r.kind != first.kind) {
        return Err(HarnessError::MixedKinds(first.kind, r.kind));
    }

    let mut multipliers: Vec<f64> = Vec::new();
    for r in records {
        if !multipliers.contains(&r.multiplier) {
            multipliers.push(r.multiplier);
        }
    }
    multipliers.sort_by(f64::total_cmp);
    let n_min = records.iter().map(|r| r.n).min().expect("nonempty") as f64;
    let n_max = records.iter().map(|r| r.n).max().expect("nonempty") as f64;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_of = |n: usize| {
        if n_max > n_min {
            LEFT + (n as f64 - n_min) / (n_max - n_min) * plot_w
        } else {
            LEFT + plot_w / 2.0
        }
    };
    let y_of = |f: f64| TOP + (1.0 - f) * plot_h;

    let mut s = String::new();
    let mut w = |line: String| {
        s.push_str(&line);
        s.push('\n');
    };
    w(format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    ));
    let title = match (first.kind, first.l) {
        (SweepKindName::Offset, Some(l)) => format!("{}-offset Hamilton cycle, k = {}", l, first.k),
        _ => format!("T-connectivity, k = {}", first.k),
    };
    w(format!(
        r#"<text x="{}" y="24" text-anchor="middle">{title}</text>"#,
        LEFT + plot_w / 2.0
    ));

    for r in records {
        if r.success_fraction().is_none() {
            w(format!(
                "<!-- warning: dropped cell n={} multiplier={:.5e}: no decided trials -->",
                r.n, r.multiplier
            ));
        } else if r.timeout_warning() {
            w(format!(
                "<!-- warning: cell n={} multiplier={:.5e}: {} of {} trials timed out -->",
                r.n, r.multiplier, r.timeouts, r.trials
            ));
        }
    }

    // axes
    let (x0, y0, x1, y1) = (LEFT, TOP + plot_h, LEFT + plot_w, TOP);
    w(format!(
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
    ));
    w(format!(
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    ));
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let y = y_of(f);
        w(format!(
            r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#,
            x0 - 4.0
        ));
        w(format!(
            r#"<text x="{}" y="{:.2}" text-anchor="end">{f:.2}</text>"#,
            x0 - 8.0,
            y + 4.0
        ));
    }
    let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    for &n in &ns {
        let x = x_of(n);
        w(format!(
            r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}" stroke="black"/>"#,
            y0 + 4.0
        ));
        w(format!(
            r#"<text x="{x:.2}" y="{}" text-anchor="middle">{n}</text>"#,
            y0 + 18.0
        ));
    }
    w(format!(
        r#"<text x="{}" y="{}" text-anchor="middle">n</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0
    ));
    w(format!(
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">success fraction (decided trials)</text>"#,
        TOP + plot_h / 2.0
    ));

    // series and legend
    for (i, &m) in multipliers.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut pts: Vec<(usize, f64)> = records
            .iter()
            .filter(|r| r.multiplier == m)
            .filter_map(|r| r.success_fraction().map(|f| (r.n, f)))
            .collect();
        pts.sort_by_key(|&(n, _)| n);
        let coords: Vec<String> = pts
            .iter()
            .map(|&(n, f)| format!("{:.2},{:.2}", x_of(n), y_of(f)))
            .collect();
        w(format!(
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        ));
        for &(n, f) in &pts {
            w(format!(
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                x_of(n),
                y_of(f)
            ));
        }
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 20.0;
        w(format!(
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        ));
        w(format!(
            r#"<text x="{}" y="{}">{m} x threshold</text>"#,
            lx + 30.0,
            ly + 4.0
        ));
    }
    w("</svg>".into());
    Ok(s)
}
