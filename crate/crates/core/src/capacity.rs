//! Fleet data-volume estimation for connected vehicles.
//!
//! Decimal SI units throughout (1 TB = 1000 GB, 1 PB = 1000 TB), a 365-day
//! year and a 24-hour operation day. Arithmetic is exact; rounding happens
//! only when values are displayed.

use std::fmt;
use std::ops::Add;

use rust_decimal::Decimal;
use serde::Serialize;

const THOUSAND: Decimal = Decimal::from_parts(1000, 0, 0, false, 0);
const DAYS_PER_YEAR: Decimal = Decimal::from_parts(365, 0, 0, false, 0);
const HOURS_PER_DAY: Decimal = Decimal::from_parts(24, 0, 0, false, 0);

macro_rules! unit {
    ($name:ident, $unit:literal) => {
        #[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
        #[serde(transparent)]
        pub struct $name(pub Decimal);

        impl $name {
            pub fn value(self) -> Decimal {
                self.0.normalize()
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl std::iter::Sum for $name {
            fn sum<I: Iterator<Item = $name>>(iter: I) -> $name {
                iter.fold($name::default(), Add::add)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{} {}", self.value(), $unit)
            }
        }
    };
}

unit!(MbPerHour, "MB/h");
unit!(GbPerDay, "GB/day");
unit!(TbPerDay, "TB/day");
unit!(PbPerYear, "PB/year");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DataSourceRate {
    pub name: String,
    pub per_car: GbPerDay,
}

impl DataSourceRate {
    pub fn new(name: impl Into<String>, per_car_gb_per_day: u32) -> Self {
        DataSourceRate {
            name: name.into(),
            per_car: GbPerDay(Decimal::from(per_car_gb_per_day)),
        }
    }
}

/// Vehicle bus data rates per car: CAN 12, MOST 210, FlexRay 80 and Ethernet
/// 80 GB/day.
pub fn builtin_sources() -> Vec<DataSourceRate> {
    vec![
        DataSourceRate::new("CAN", 12),
        DataSourceRate::new("MOST", 210),
        DataSourceRate::new("FlexRay", 80),
        DataSourceRate::new("Ethernet", 80),
    ]
}

/// Published headline for a 1000-car fleet, an upper bound on the total.
pub const HEADLINE_TB_PER_DAY: u32 = 400;

/// Fleet-wide daily volume of one source.
pub fn fleet_daily(rate: &DataSourceRate, fleet_size: u64) -> TbPerDay {
    TbPerDay(rate.per_car.0 * Decimal::from(fleet_size) / THOUSAND)
}

pub fn yearly_pb(daily: TbPerDay) -> PbPerYear {
    PbPerYear(daily.0 * DAYS_PER_YEAR / THOUSAND)
}

/// Daily volume of a continuously operating source measured per hour.
pub fn daily_from_hourly(rate: MbPerHour) -> GbPerDay {
    GbPerDay(rate.0 * HOURS_PER_DAY / THOUSAND)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SourceEstimate {
    pub source: String,
    pub per_car: GbPerDay,
    pub daily_tb: TbPerDay,
    pub yearly_pb: PbPerYear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FleetEstimate {
    pub fleet_size: u64,
    pub sources: Vec<SourceEstimate>,
    pub daily_tb_total: TbPerDay,
    pub yearly_pb_total: PbPerYear,
}

pub fn estimate(sources: &[DataSourceRate], fleet_size: u64) -> FleetEstimate {
    let rows: Vec<SourceEstimate> = sources
        .iter()
        .map(|s| {
            let daily = fleet_daily(s, fleet_size);
            SourceEstimate {
                source: s.name.clone(),
                per_car: s.per_car,
                daily_tb: daily,
                yearly_pb: yearly_pb(daily),
            }
        })
        .collect();
    FleetEstimate {
        fleet_size,
        daily_tb_total: rows.iter().map(|r| r.daily_tb).sum(),
        yearly_pb_total: rows.iter().map(|r| r.yearly_pb).sum(),
        sources: rows,
    }
}

/// Estimate over the built-in vehicle bus sources.
pub fn fleet_estimate(fleet_size: u64) -> FleetEstimate {
    estimate(&builtin_sources(), fleet_size)
}

/// Rounds to `digits` significant figures for display.
pub fn significant(value: Decimal, digits: u32) -> Decimal {
    value.round_sf(digits).unwrap_or(value).normalize()
}

impl FleetEstimate {
    /// `source,daily_tb,yearly_pb` lines with a header and a `total` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,daily_tb,yearly_pb\n");
        for r in &self.sources {
            out.push_str(&format!(
                "{},{},{}\n",
                r.source,
                r.daily_tb.value(),
                r.yearly_pb.value()
            ));
        }
        out.push_str(&format!(
            "total,{},{}\n",
            self.daily_tb_total.value(),
            self.yearly_pb_total.value()
        ));
        out
    }

    /// Aligned text table.
    pub fn to_table(&self) -> String {
        let header = [
            "Data source".to_string(),
            "Per car (GB/day)".to_string(),
            format!("{} cars (TB/day)", self.fleet_size),
            format!("1 year @{} cars (PB)", self.fleet_size),
            "~PB (2 s.f.)".to_string(),
        ];
        let mut rows: Vec<[String; 5]> = self
            .sources
            .iter()
            .map(|r| {
                [
                    r.source.clone(),
                    r.per_car.value().to_string(),
                    r.daily_tb.value().to_string(),
                    r.yearly_pb.value().to_string(),
                    significant(r.yearly_pb.0, 2).to_string(),
                ]
            })
            .collect();
        rows.push([
            "Total".to_string(),
            self.sources
                .iter()
                .map(|r| r.per_car)
                .sum::<GbPerDay>()
                .value()
                .to_string(),
            self.daily_tb_total.value().to_string(),
            self.yearly_pb_total.value().to_string(),
            significant(self.yearly_pb_total.0, 2).to_string(),
        ]);
        let mut widths = header.clone().map(|h| h.len());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String; 5]| {
            let mut s = format!("{:<w$}", cells[0], w = widths[0]);
            for (cell, w) in cells.iter().zip(widths).skip(1) {
                s.push_str(&format!("  {cell:>w$}"));
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = line(&header);
        out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
        out.push('\n');
        for (i, row) in rows.iter().enumerate() {
            if i + 1 == rows.len() {
                out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
                out.push('\n');
            }
            out.push_str(&line(row));
        }
        out
    }
}
