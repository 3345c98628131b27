//! ASCII and SVG drawings of paths and meander words. Meanders are drawn as
//! chained half-circles on a common axis; the picture is schematic.

use std::fmt::Write as _;

use airpocket::{parse_path, AirPocketPath, Arc, MeanderWord, PathError, Step};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Path(AirPocketPath),
    Meander(MeanderWord),
}

/// Words over `L`/`R` are meanders, anything else must parse as a path.
pub fn parse_object(text: &str) -> Result<Object, PathError> {
    let t = text.trim();
    if !t.is_empty() && t.chars().all(|c| c == 'L' || c == 'R') {
        return MeanderWord::parse(t).map(Object::Meander);
    }
    parse_path(t).map(Object::Path)
}

pub fn render(object: &Object, style: Style) -> String {
    match (object, style) {
        (Object::Path(p), Style::Ascii) => ascii_path(p),
        (Object::Path(p), Style::Svg) => svg_path(p),
        (Object::Meander(w), Style::Ascii) => ascii_meander(w),
        (Object::Meander(w), Style::Svg) => svg_meander(w),
    }
}

/// One column per step, one row per unit of height, top row first. `U` is
/// `/`, `D1` is `\` and a longer drop is a column of `|`.
pub fn ascii_path(path: &AirPocketPath) -> String {
    let heights = path.heights();
    let top = heights.iter().copied().max().unwrap_or(0) as usize;
    let mut grid = vec![vec![' '; path.len()]; top];
    let mut h = 0usize;
    for (i, step) in path.steps().iter().enumerate() {
        match *step {
            Step::Up => {
                grid[h][i] = '/';
                h += 1;
            }
            Step::Down(k) => {
                let k = k as usize;
                for row in &mut grid[h - k..h] {
                    row[i] = if k == 1 { '\\' } else { '|' };
                }
                h -= k;
            }
        }
    }
    let mut out = String::new();
    for row in grid.iter().rev() {
        out.extend(row.iter());
        out.push('\n');
    }
    out
}

const UNIT: i64 = 20;
const MARGIN: i64 = 10;

const SVG_STYLE: &str = "line.step{stroke:#1f4e79;stroke-width:2}\
.axis{stroke:#999;stroke-width:1}\
path.arc-L{fill:none;stroke:#b03a2e;stroke-width:2}\
path.arc-R{fill:none;stroke:#1f4e79;stroke-width:2}\
circle.start{fill:#000}";

fn svg_open(width: i64, height: i64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<style>{SVG_STYLE}</style>\n"
    )
}

/// Each step is one `<line class="step">`; the axis is a `<path>`.
pub fn svg_path(path: &AirPocketPath) -> String {
    let top = path.heights().into_iter().max().unwrap_or(0);
    let width = path.len() as i64 * UNIT + 2 * MARGIN;
    let height = top * UNIT + 2 * MARGIN;
    let y = |h: i64| MARGIN + (top - h) * UNIT;
    let mut out = svg_open(width, height);
    let _ = writeln!(
        out,
        "<path class=\"axis\" d=\"M {MARGIN} {} H {}\"/>",
        y(0),
        width - MARGIN
    );
    let mut h = 0;
    for (i, step) in path.steps().iter().enumerate() {
        let x = MARGIN + i as i64 * UNIT;
        let next = h + step.delta();
        let _ = writeln!(
            out,
            "<line class=\"step\" x1=\"{x}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            y(h),
            x + UNIT,
            y(next)
        );
        h = next;
    }
    out.push_str("</svg>\n");
    out
}

/// One half-circle of diameter 2 between two axis points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfCircle {
    pub letter: Arc,
    pub from: i64,
    pub to: i64,
    pub above: bool,
}

/// Lays the arcs end to end. Every arc keeps the heading of the previous
/// one: heading north it bulges above the axis, heading south below, and
/// the heading flips after each arc. `L` turns counterclockwise.
pub fn half_circles(word: &MeanderWord) -> Vec<HalfCircle> {
    let mut x = 0;
    let mut north = true;
    word.letters()
        .iter()
        .map(|&letter| {
            let step = match (letter, north) {
                (Arc::L, true) | (Arc::R, false) => -2,
                (Arc::R, true) | (Arc::L, false) => 2,
            };
            let arc = HalfCircle {
                letter,
                from: x,
                to: x + step,
                above: north,
            };
            x += step;
            north = !north;
            arc
        })
        .collect()
}

fn extent(arcs: &[HalfCircle]) -> (i64, i64) {
    let lo = arcs.iter().map(|a| a.from.min(a.to)).min().unwrap_or(0);
    let hi = arcs.iter().map(|a| a.from.max(a.to)).max().unwrap_or(0);
    (lo, hi)
}

/// Three rows: arcs above the axis, the axis with `o` at the start, arcs
/// below. Cells claimed by two different glyphs show `+`.
pub fn ascii_meander(word: &MeanderWord) -> String {
    let arcs = half_circles(word);
    let (lo, hi) = extent(&arcs);
    let width = (hi - lo + 1) as usize;
    let mut above = vec![' '; width];
    let mut below = vec![' '; width];
    let put = |row: &mut Vec<char>, col: i64, c: char| {
        let cell = &mut row[(col - lo) as usize];
        *cell = if *cell == ' ' || *cell == c { c } else { '+' };
    };
    for a in &arcs {
        let (l, r) = (a.from.min(a.to), a.from.max(a.to));
        let row = if a.above { &mut above } else { &mut below };
        let (left, mid, right) = if a.above { ('/', '-', '\\') } else { ('\\', '_', '/') };
        put(row, l, left);
        put(row, l + 1, mid);
        put(row, r, right);
    }
    let mut axis = vec!['-'; width];
    axis[(-lo) as usize] = 'o';
    let mut out = String::new();
    for row in [above, axis, below] {
        out.extend(row);
        out.push('\n');
    }
    out
}

/// Each letter becomes one `<path class="arc-L">` or `<path class="arc-R">`
/// half-circle; a dot marks the start.
pub fn svg_meander(word: &MeanderWord) -> String {
    let arcs = half_circles(word);
    let (lo, hi) = extent(&arcs);
    let r = UNIT / 2;
    let width = (hi - lo) * r + 2 * MARGIN;
    let height = 2 * r + 2 * MARGIN;
    let axis = MARGIN + r;
    let x = |v: i64| MARGIN + (v - lo) * r;
    let mut out = svg_open(width, height);
    let _ = writeln!(
        out,
        "<path class=\"axis\" d=\"M {MARGIN} {axis} H {}\"/>",
        width - MARGIN
    );
    for a in &arcs {
        // SVG sweep flag 1 draws clockwise on screen, which is a right turn.
        let sweep = u8::from(a.letter == Arc::R);
        let class = match a.letter {
            Arc::L => "arc-L",
            Arc::R => "arc-R",
        };
        let _ = writeln!(
            out,
            "<path class=\"{class}\" d=\"M {} {axis} A {r} {r} 0 0 {sweep} {} {axis}\"/>",
            x(a.from),
            x(a.to)
        );
    }
    let _ = writeln!(out, "<circle class=\"start\" cx=\"{}\" cy=\"{axis}\" r=\"3\"/>", x(0));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> AirPocketPath {
        parse_path(s).unwrap()
    }

    #[test]
    fn ascii_grid_has_one_column_per_step() {
        assert_eq!(ascii_path(&path("UUD2")), " /|\n/ |\n");
        assert_eq!(ascii_path(&path("UDUD")), "/\\/\\\n");
    }

    #[test]
    fn svg_path_has_one_line_per_step() {
        let svg = svg_path(&path("UD"));
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.starts_with("<svg xmlns"));
    }

    #[test]
    fn arcs_follow_headings() {
        let w = MeanderWord::parse("LLRR").unwrap();
        let arcs = half_circles(&w);
        assert_eq!((arcs[0].from, arcs[0].to, arcs[0].above), (0, -2, true));
        assert_eq!((arcs[1].from, arcs[1].to, arcs[1].above), (-2, 0, false));
        assert_eq!((arcs[2].from, arcs[2].to, arcs[2].above), (0, 2, true));
    }

    #[test]
    fn closed_meanders_return_to_the_start() {
        for n in 1..=6 {
            for w in airpocket::enumeration::meanders(n) {
                let arcs = half_circles(&w);
                assert_eq!(arcs.last().unwrap().to, 0, "{w}");
            }
        }
    }

    #[test]
    fn parse_object_dispatches_on_letters() {
        assert!(matches!(parse_object("LRRL"), Ok(Object::Meander(_))));
        assert!(matches!(parse_object("UUD2"), Ok(Object::Path(_))));
        assert!(parse_object("UUD").is_err());
    }
}
