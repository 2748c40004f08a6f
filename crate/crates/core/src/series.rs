//! Time series ingestion, alignment, windowing and normalization.
//!
//! Every geometric quantity downstream is computed from [`CenteredUnitVector`]s:
//! the values of one series inside one window, with the window sample mean
//! removed and scaled to unit Euclidean length.

use std::collections::HashSet;
use std::io::{Read, Write};

use chrono::{Datelike, NaiveDate};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{norm, Scalar};

/// One uniformly sampled real valued series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries<T> {
    pub id: String,
    /// Tick of the first sample.
    pub start: i64,
    /// Sampling period in ticks.
    pub step: i64,
    pub values: Vec<T>,
}

impl<T: Scalar> TimeSeries<T> {
    pub fn new(id: impl Into<String>, start: i64, step: i64, values: Vec<T>) -> Result<Self> {
        let id = id.into();
        if step <= 0 {
            return Err(Error::InvalidStep(step));
        }
        if values.is_empty() {
            return Err(Error::EmptySeries(id));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { id, index });
        }
        Ok(Self { id, start, step, values })
    }

    /// Builds a series from `f64` samples starting at tick 0 with step 1.
    pub fn from_values(id: impl Into<String>, values: &[f64]) -> Result<Self> {
        Self::new(id, 0, 1, values.iter().map(|&v| T::lit(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Tick of the last sample.
    pub fn end(&self) -> i64 {
        self.start + self.step * (self.values.len() as i64 - 1)
    }

    /// Applies `a * x + b` to every value.
    pub fn affine(&self, a: T, b: T) -> Self {
        Self {
            id: self.id.clone(),
            start: self.start,
            step: self.step,
            values: self.values.iter().map(|&v| a * v + b).collect(),
        }
    }

    pub fn window_values(&self, w: &WindowSpec) -> Result<&[T]> {
        w.check(self.len())?;
        Ok(&self.values[w.start..w.start + w.len])
    }
}

/// How integer ticks map to human readable timestamps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeAxis {
    /// Plain integer ticks.
    #[default]
    Integer,
    /// Ticks count months: `year * 12 + (month - 1)`.
    Monthly,
    /// Ticks count days since 1970-01-01.
    Daily,
}

impl TimeAxis {
    pub fn label(self, tick: i64) -> String {
        match self {
            TimeAxis::Integer => tick.to_string(),
            TimeAxis::Monthly => {
                let year = tick.div_euclid(12);
                let month = tick.rem_euclid(12) + 1;
                format!("{year:04}-{month:02}")
            }
            TimeAxis::Daily => match epoch().checked_add_signed(chrono::Duration::days(tick)) {
                Some(d) => d.format("%Y-%m-%d").to_string(),
                None => tick.to_string(),
            },
        }
    }

    fn header(self) -> &'static str {
        match self {
            TimeAxis::Integer => "tick",
            TimeAxis::Monthly | TimeAxis::Daily => "date",
        }
    }
}

fn epoch() -> NaiveDate {
    NaiveDate::from_ymd_opt(1970, 1, 1).expect("valid epoch")
}

/// A set of aligned series: same start, step and length, unique ids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeriesSet<T> {
    series: Vec<TimeSeries<T>>,
    axis: TimeAxis,
}

impl<T: Scalar> TimeSeriesSet<T> {
    pub fn new(series: Vec<TimeSeries<T>>) -> Result<Self> {
        Self::with_axis(series, TimeAxis::Integer)
    }

    pub fn with_axis(series: Vec<TimeSeries<T>>, axis: TimeAxis) -> Result<Self> {
        let first = series.first().ok_or(Error::TooFewPoints { needed: 1, got: 0 })?;
        let mut seen = HashSet::new();
        for s in &series {
            if !seen.insert(s.id.as_str()) {
                return Err(Error::DuplicateId(s.id.clone()));
            }
            if s.step != first.step {
                return Err(Error::StepMismatch { id: s.id.clone(), step: s.step, expected: first.step });
            }
            if s.start != first.start || s.len() != first.len() {
                return Err(Error::Csv(format!("series `{}` is not aligned with `{}`", s.id, first.id)));
            }
        }
        Ok(Self { series, axis })
    }

    pub fn series(&self) -> &[TimeSeries<T>] {
        &self.series
    }

    pub fn into_series(self) -> Vec<TimeSeries<T>> {
        self.series
    }

    pub fn axis(&self) -> TimeAxis {
        self.axis
    }

    /// Number of series.
    pub fn width(&self) -> usize {
        self.series.len()
    }

    /// Number of samples per series.
    pub fn len(&self) -> usize {
        self.series[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.series[0].is_empty()
    }

    pub fn start(&self) -> i64 {
        self.series[0].start
    }

    pub fn step(&self) -> i64 {
        self.series[0].step
    }

    pub fn tick(&self, index: usize) -> i64 {
        self.start() + self.step() * index as i64
    }

    pub fn ids(&self) -> Vec<String> {
        self.series.iter().map(|s| s.id.clone()).collect()
    }

    /// Reads the CSV layout: a mandatory header row, a first column of
    /// integer ticks or ISO dates, and one column per series.
    ///
    /// Dates written `YYYY-MM`, or `YYYY-MM-DD` with every day equal to 1,
    /// map to month ticks; any other `YYYY-MM-DD` column maps to day ticks.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
        if headers.len() < 2 {
            return Err(Error::Csv("need a time column and at least one series column".into()));
        }
        let ids: Vec<String> = headers.iter().skip(1).map(str::to_owned).collect();
        let mut stamps = Vec::new();
        let mut columns: Vec<Vec<T>> = vec![Vec::new(); ids.len()];
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Csv(e.to_string()))?;
            if record.len() != headers.len() {
                return Err(Error::Csv(format!(
                    "data row {row} has {} fields, expected {}",
                    record.len(),
                    headers.len()
                )));
            }
            stamps.push(record[0].to_owned());
            for (col, id) in ids.iter().enumerate() {
                let cell = &record[col + 1];
                if cell.is_empty() {
                    return Err(Error::MissingValue { column: id.clone(), row });
                }
                let v: f64 = cell
                    .parse()
                    .map_err(|_| Error::Csv(format!("cannot parse `{cell}` in column `{id}` at data row {row}")))?;
                if !v.is_finite() {
                    return Err(Error::NonFinite { id: id.clone(), index: row });
                }
                columns[col].push(T::from_f64(v).ok_or(Error::NonFinite { id: id.clone(), index: row })?);
            }
        }
        if stamps.is_empty() {
            return Err(Error::Csv("no data rows".into()));
        }
        let (axis, ticks) = parse_ticks(&stamps)?;
        let step = if ticks.len() > 1 { ticks[1] - ticks[0] } else { 1 };
        if step <= 0 {
            return Err(Error::InvalidStep(step));
        }
        for (row, pair) in ticks.windows(2).enumerate() {
            if pair[1] - pair[0] != step {
                return Err(Error::IrregularSampling { row: row + 1, tick: pair[1], step });
            }
        }
        let series = ids
            .into_iter()
            .zip(columns)
            .map(|(id, values)| TimeSeries::new(id, ticks[0], step, values))
            .collect::<Result<Vec<_>>>()?;
        Self::with_axis(series, axis)
    }

    /// Writes the set in the layout accepted by [`TimeSeriesSet::read_csv`].
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec![self.axis.header().to_owned()];
        header.extend(self.ids());
        wtr.write_record(&header).map_err(|e| Error::Csv(e.to_string()))?;
        for i in 0..self.len() {
            let mut row = vec![self.axis.label(self.tick(i))];
            row.extend(self.series.iter().map(|s| s.values[i].to_string()));
            wtr.write_record(&row).map_err(|e| Error::Csv(e.to_string()))?;
        }
        wtr.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}

fn parse_ticks(stamps: &[String]) -> Result<(TimeAxis, Vec<i64>)> {
    if let Ok(ticks) = stamps.iter().map(|s| s.parse::<i64>()).collect::<Result<Vec<_>, _>>() {
        return Ok((TimeAxis::Integer, ticks));
    }
    let bad = |s: &str| Error::Csv(format!("cannot parse `{s}` as an integer tick or ISO date"));
    if stamps.iter().all(|s| s.len() == 7) {
        let ticks = stamps
            .iter()
            .map(|s| {
                NaiveDate::parse_from_str(&format!("{s}-01"), "%Y-%m-%d").map(|d| month_tick(&d)).map_err(|_| bad(s))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok((TimeAxis::Monthly, ticks));
    }
    let dates = stamps
        .iter()
        .map(|s| NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|_| bad(s)))
        .collect::<Result<Vec<_>>>()?;
    if dates.iter().all(|d| d.day() == 1) {
        Ok((TimeAxis::Monthly, dates.iter().map(month_tick).collect()))
    } else {
        Ok((TimeAxis::Daily, dates.iter().map(|d| (*d - epoch()).num_days()).collect()))
    }
}

fn month_tick(d: &NaiveDate) -> i64 {
    i64::from(d.year()) * 12 + i64::from(d.month0())
}

/// Truncates every series to the common tick range.
pub fn align<T: Scalar>(series: Vec<TimeSeries<T>>) -> Result<TimeSeriesSet<T>> {
    let first = series.first().ok_or(Error::EmptyOverlap)?;
    let step = first.step;
    let phase = first.start;
    let mut seen = HashSet::new();
    for s in &series {
        if !seen.insert(s.id.as_str()) {
            return Err(Error::DuplicateId(s.id.clone()));
        }
        if s.step != step {
            return Err(Error::StepMismatch { id: s.id.clone(), step: s.step, expected: step });
        }
        if (s.start - phase).rem_euclid(step) != 0 {
            return Err(Error::EmptyOverlap);
        }
    }
    let lo = series.iter().map(|s| s.start).max().expect("nonempty");
    let hi = series.iter().map(|s| s.end()).min().expect("nonempty");
    if lo > hi {
        return Err(Error::EmptyOverlap);
    }
    let len = ((hi - lo) / step + 1) as usize;
    let aligned = series
        .into_iter()
        .map(|s| {
            let offset = ((lo - s.start) / step) as usize;
            TimeSeries { values: s.values[offset..offset + len].to_vec(), start: lo, ..s }
        })
        .collect();
    TimeSeriesSet::new(aligned)
}

/// A window `[start, start + len)` over sample indices, plus the stride used
/// when the window slides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowSpec {
    pub start: usize,
    pub len: usize,
    pub stride: usize,
}

impl WindowSpec {
    pub fn new(start: usize, len: usize) -> Self {
        Self { start, len, stride: 1 }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn check(&self, series_len: usize) -> Result<()> {
        if self.len < 2 {
            return Err(Error::InvalidWindow(format!("window length {} < 2", self.len)));
        }
        if self.stride == 0 {
            return Err(Error::InvalidWindow("stride must be at least 1".into()));
        }
        if self.len > series_len {
            return Err(Error::WindowTooLong { window: self.len, len: series_len });
        }
        if self.start + self.len > series_len {
            return Err(Error::InvalidWindow(format!(
                "window [{}, {}) exceeds series length {series_len}",
                self.start,
                self.start + self.len
            )));
        }
        Ok(())
    }
}

/// Window values with their sample mean removed, scaled to unit length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenteredUnitVector<T> {
    pub components: Vec<T>,
    pub source_id: String,
    pub window_start: usize,
}

impl<T> AsRef<[T]> for CenteredUnitVector<T> {
    fn as_ref(&self) -> &[T] {
        &self.components
    }
}

/// Centers and normalizes one window of `s`.
pub fn window_vector<T: Scalar>(s: &TimeSeries<T>, w: &WindowSpec) -> Result<CenteredUnitVector<T>> {
    let values = s.window_values(w)?;
    let zero_variance = || Error::ZeroVariance { id: s.id.clone(), start: w.start };
    if values.iter().all(|&v| v == values[0]) {
        return Err(zero_variance());
    }
    let mean = values.iter().copied().sum::<T>() / T::from_count(values.len());
    let centered: Vec<T> = values.iter().map(|&v| v - mean).collect();
    let length = norm(&centered);
    if length.is_nan() || length <= T::zero() || length.is_infinite() {
        return Err(zero_variance());
    }
    Ok(CenteredUnitVector {
        components: centered.into_iter().map(|v| v / length).collect(),
        source_id: s.id.clone(),
        window_start: w.start,
    })
}
