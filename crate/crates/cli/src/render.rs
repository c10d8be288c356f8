//! SVG and ASCII figures: the unit grid, a line, its integer points and the
//! broken line `(k, h_k)` of a word, where `h_k` counts the ones among the
//! first `k` letters.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigInt;
use sturmian::geometry::{grid_points, word_from_defining_line, DefiningLine, ExactRational, GridLine};
use sturmian::mapping::through_all_word;
use sturmian::returns::line_word;
use sturmian::{Error, Result, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Ascii,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RenderLine {
    Grid(GridLine),
    Defining(DefiningLine),
}

impl RenderLine {
    fn value_at(&self, x: i64) -> ExactRational {
        let x = BigInt::from(x);
        match self {
            RenderLine::Grid(l) => ExactRational::new(
                BigInt::from(l.b()) * x + BigInt::from(l.c()),
                BigInt::from(l.a()),
            ),
            RenderLine::Defining(d) => d.alpha() * ExactRational::from_integer(x) + d.rho(),
        }
    }

    /// Abscissas in `[0, n]` where the line meets an integer point.
    fn integer_xs(&self, n: usize) -> Vec<i64> {
        match self {
            RenderLine::Grid(l) => grid_points(l, n).iter().map(|p| p.x).collect(),
            RenderLine::Defining(_) => (0..=n as i64).filter(|&x| self.value_at(x).is_integer()).collect(),
        }
    }

    /// The word drawn when none is given.
    pub fn default_word(&self, n: usize) -> Word {
        match self {
            RenderLine::Grid(l) => through_all_word(l, n).unwrap_or_else(|| line_word(l, n)),
            RenderLine::Defining(d) => word_from_defining_line(d, n),
        }
    }

    fn label(&self) -> String {
        match self {
            RenderLine::Grid(l) => format!("line {l}"),
            RenderLine::Defining(d) => format!(
                "line y = {} x + {}",
                sturmian::geometry::format_rational(d.alpha()),
                sturmian::geometry::format_rational(d.rho())
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub line: RenderLine,
    pub n: usize,
    pub word: Option<Word>,
    pub format: Format,
    /// Pixels per unit cell (SVG only).
    pub cell: u32,
}

pub fn render(spec: &RenderSpec) -> Result<String> {
    let word = match &spec.word {
        Some(w) if w.len() != spec.n => {
            return Err(Error::LengthMismatch {
                expected: spec.n,
                got: w.len(),
            })
        }
        Some(w) => w.clone(),
        None => spec.line.default_word(spec.n),
    };
    if spec.cell == 0 {
        return Err(Error::OutOfRange("cell size must be positive".into()));
    }
    Ok(match spec.format {
        Format::Svg => svg(spec, &word),
        Format::Ascii => ascii(spec, &word),
    })
}

/// Decimal with at most four fractional digits, rounded half away from zero.
fn fixed(r: &ExactRational) -> String {
    let scaled = (r * ExactRational::from_integer(BigInt::from(10_000))).round().to_integer();
    let sign = if scaled < BigInt::from(0) { "-" } else { "" };
    let magnitude = scaled.magnitude();
    let int = magnitude / 10_000u32;
    let frac = format!("{:04}", magnitude % 10_000u32);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn svg(spec: &RenderSpec, word: &Word) -> String {
    let n = spec.n as i64;
    let s = spec.cell as i64;
    let side = (n + 1) * s;
    let size = side + 2 * s;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(out, "<title>{}, n = {n}, word {word}</title>", spec.line.label());
    // Unit coordinates with y pointing up.
    let _ = writeln!(
        out,
        "<g transform=\"translate({s} {}) scale({s} -{s})\" fill=\"none\" stroke-linecap=\"round\">",
        s + side
    );

    let mut d = String::new();
    for k in 0..=n + 1 {
        let _ = write!(d, "M0 {k}H{}M{k} 0V{}", n + 1, n + 1);
    }
    let _ = writeln!(
        out,
        "<path class=\"grid\" d=\"{d}\" stroke=\"#c8c8c8\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>"
    );

    let _ = writeln!(
        out,
        "<line class=\"line\" x1=\"0\" y1=\"{}\" x2=\"{n}\" y2=\"{}\" stroke=\"#1f5fbf\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\"/>",
        fixed(&spec.line.value_at(0)),
        fixed(&spec.line.value_at(n))
    );

    let points: Vec<String> = word
        .heights()
        .iter()
        .enumerate()
        .map(|(k, h)| format!("{k},{h}"))
        .collect();
    let _ = writeln!(
        out,
        "<polyline class=\"word\" points=\"{}\" stroke=\"#d0402b\" stroke-width=\"2.5\" vector-effect=\"non-scaling-stroke\"/>",
        points.join(" ")
    );

    for x in spec.line.integer_xs(spec.n) {
        let _ = writeln!(
            out,
            "<circle class=\"grid-point\" cx=\"{x}\" cy=\"{}\" r=\"0.12\" fill=\"#1f5fbf\"/>",
            fixed(&spec.line.value_at(x))
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        "<g class=\"letters\" font-family=\"monospace\" font-size=\"{}\" text-anchor=\"middle\">",
        s / 2
    );
    for (k, letter) in word.letters().iter().enumerate() {
        let x = s + k as i64 * s + s / 2;
        let y = s + side + (s * 3) / 4;
        let _ = writeln!(out, "<text x=\"{x}\" y=\"{y}\">{letter}</text>");
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn ascii(spec: &RenderSpec, word: &Word) -> String {
    let n = spec.n as i64;
    let heights = word.heights();
    let values: Vec<ExactRational> = (0..=n).map(|x| spec.line.value_at(x)).collect();
    let width = (n + 1).to_string().len();
    let mut out = String::new();
    let _ = writeln!(out, "{}, n = {n}, word {word}", spec.line.label());
    out.push_str("* broken line, o integer point of the line, ' line within the cell above\n");
    for y in (0..=n + 1).rev() {
        let mut row = format!("{y:>width$} |");
        for x in 0..=n {
            let v = &values[x as usize];
            let vertex = if heights[x as usize] == y { '*' } else { '.' };
            let mark = if v.is_integer() && v.to_integer() == BigInt::from(y) {
                'o'
            } else if !v.is_integer() && v.floor().to_integer() == BigInt::from(y) {
                '\''
            } else {
                ' '
            };
            row.push(vertex);
            row.push(mark);
            row.push(' ');
        }
        out.push_str(row.trim_end());
        out.push('\n');
    }
    let _ = writeln!(out, "{:>width$} +{}", "", "-".repeat(3 * (n as usize + 1)));
    let mut letters = format!("{:>width$}  ", "");
    for letter in word.letters() {
        let _ = write!(letters, "  {letter}");
    }
    out.push_str(letters.trim_end());
    out.push('\n');
    out
}
