use crate::{FrameError, FrameSystem, C64};
use std::fmt::Write;

/// Serialize as `d |M|` followed by `w re1 im1 ... re_d im_d` per vector.
pub fn write_frame(frame: &FrameSystem) -> String {
    let mut out = format!("{} {}\n", frame.dim(), frame.len());
    for (v, w) in frame.vectors().iter().zip(frame.weights()) {
        let _ = write!(out, "{w:e}");
        for z in v.iter() {
            let _ = write!(out, " {:e} {:e}", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

pub fn read_frame(text: &str) -> Result<FrameSystem, FrameError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| FrameError::Parse("no header line".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(FrameError::Parse(format!("line {hl}: header must be `d |M|`")));
    }
    let parse_usize = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| FrameError::Parse(format!("line {hl}: bad integer `{s}`")))
    };
    let d = parse_usize(head[0])?;
    let m = parse_usize(head[1])?;
    let mut vectors = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (ln, line) in lines {
        let nums: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse::<f64>).collect();
        let nums = nums.map_err(|e| FrameError::Parse(format!("line {ln}: {e}")))?;
        if nums.len() != 1 + 2 * d {
            return Err(FrameError::Parse(format!(
                "line {ln}: expected {} numbers, found {}",
                1 + 2 * d,
                nums.len()
            )));
        }
        weights.push(nums[0]);
        vectors.push(nums[1..].chunks(2).map(|c| C64::new(c[0], c[1])).collect());
    }
    if vectors.len() != m {
        return Err(FrameError::Parse(format!("header announces {m} vectors, found {}", vectors.len())));
    }
    FrameSystem::new(vectors, weights)
}
