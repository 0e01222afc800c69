//! Self-contained SVG rendering of fidelity histograms.

use pulseforge_core::metrics::{haar_pdf, FidelityHistogram};

use crate::output::Provenance;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;

/// Bar histogram of sampled fidelities with the Haar density overlaid.
pub fn fidelity_histogram_svg(
    hist: &FidelityHistogram,
    n_dim: usize,
    title: &str,
    prov: &Provenance,
) -> String {
    let bins = hist.n_bins();
    let freqs = hist.frequencies();
    // densities, so the Haar PDF overlays on the same axis
    let densities: Vec<f64> = freqs.iter().map(|f| f * bins as f64).collect();
    let haar: Vec<f64> = (0..=100)
        .map(|i| haar_pdf(i as f64 / 100.0, n_dim).unwrap_or(0.0))
        .collect();
    let y_max = densities
        .iter()
        .chain(haar.iter())
        .cloned()
        .fold(1.0_f64, f64::max)
        * 1.08;

    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let x_of = |f: f64| MARGIN + f * plot_w;
    let y_of = |d: f64| HEIGHT - MARGIN - (d / y_max) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!(
        "<!-- tool_version={} seed={} device_sha256={} -->\n",
        crate::output::TOOL_VERSION,
        prov.seed,
        prov.device_sha256
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    for (b, d) in densities.iter().enumerate() {
        let x0 = x_of(b as f64 / bins as f64);
        let x1 = x_of((b + 1) as f64 / bins as f64);
        let y = y_of(*d);
        svg.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#4878cf\" fill-opacity=\"0.7\"/>\n",
            x0,
            y,
            x1 - x0,
            HEIGHT - MARGIN - y
        ));
    }

    let points: Vec<String> = haar
        .iter()
        .enumerate()
        .map(|(i, d)| format!("{:.2},{:.2}", x_of(i as f64 / 100.0), y_of(*d)))
        .collect();
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#d65f5f\" stroke-width=\"2\"/>\n",
        points.join(" ")
    ));

    // axes
    svg.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN
    ));
    for i in 0..=5 {
        let f = i as f64 / 5.0;
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{:.1}</text>\n",
            x_of(f),
            HEIGHT - MARGIN + 18.0,
            f
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">fidelity</text>\n",
        WIDTH / 2.0,
        HEIGHT - 8.0
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        MARGIN - 16.0,
        title
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"#d65f5f\">Haar</text>\n",
        WIDTH - MARGIN - 40.0,
        MARGIN + 10.0
    ));
    svg.push_str("</svg>\n");
    svg
}
