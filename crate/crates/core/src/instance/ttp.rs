use super::text::{data_lines, parse_f64, parse_i64};
use super::ParseError;

/// An item available at a city.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Item {
    /// 0-based city the item lies in.
    pub city: usize,
    pub profit: u64,
    pub weight: u64,
}

/// Packing-while-traveling instance on the fixed route `1, 2, ..., n, 1`.
///
/// `distances[i]` is the leg from city `i` to city `i + 1`; the last leg
/// closes the tour back to the first city. Items are stored in solution
/// bit order: grouped by city, file order within a city.
#[derive(Clone, Debug, PartialEq)]
pub struct TtpInstance {
    distances: Vec<f64>,
    items: Vec<Item>,
    city_ranges: Vec<std::ops::Range<usize>>,
    v_min: f64,
    v_max: f64,
    capacity: f64,
    rent: f64,
}

impl TtpInstance {
    pub fn new(
        distances: Vec<f64>,
        mut items: Vec<Item>,
        v_min: f64,
        v_max: f64,
        capacity: f64,
        rent: f64,
    ) -> Result<Self, ParseError> {
        let invalid = |msg: String| Err(ParseError::InvalidParameter(msg));
        if distances.is_empty() {
            return invalid("at least one city is required".into());
        }
        if let Some(d) = distances.iter().find(|d| !(**d > 0.0 && d.is_finite())) {
            return invalid(format!("distance {d} must be positive"));
        }
        if items.is_empty() {
            return Err(ParseError::NoItems);
        }
        if let Some(it) = items.iter().find(|it| it.profit == 0 || it.weight == 0) {
            return invalid(format!("item at city {} needs positive profit and weight", it.city + 1));
        }
        if let Some(it) = items.iter().find(|it| it.city >= distances.len()) {
            return Err(ParseError::UnknownCity { line: 0, city: it.city as i64 + 1 });
        }
        if !(v_min > 0.0 && v_min < v_max && v_max.is_finite()) {
            return invalid(format!("speeds must satisfy 0 < v_min < v_max (got {v_min}, {v_max})"));
        }
        if !(capacity > 0.0 && capacity.is_finite()) {
            return invalid(format!("capacity {capacity} must be positive"));
        }
        if !(rent >= 0.0 && rent.is_finite()) {
            return invalid(format!("rent {rent} must be non-negative"));
        }
        items.sort_by_key(|it| it.city);
        let mut city_ranges = Vec::with_capacity(distances.len());
        let mut start = 0;
        for city in 0..distances.len() {
            let end = start + items[start..].iter().take_while(|it| it.city == city).count();
            city_ranges.push(start..end);
            start = end;
        }
        Ok(Self { distances, items, city_ranges, v_min, v_max, capacity, rent })
    }

    pub fn city_count(&self) -> usize {
        self.distances.len()
    }

    pub fn item_count(&self) -> usize {
        self.items.len()
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    /// Bit positions of the items located at `city`.
    pub fn items_at(&self, city: usize) -> std::ops::Range<usize> {
        self.city_ranges[city].clone()
    }

    pub fn v_min(&self) -> f64 {
        self.v_min
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn rent(&self) -> f64 {
        self.rent
    }

    /// Speed lost per unit of carried weight, `(v_max - v_min) / capacity`.
    pub fn nu(&self) -> f64 {
        (self.v_max - self.v_min) / self.capacity
    }

    pub fn total_distance(&self) -> f64 {
        self.distances.iter().sum()
    }
}

#[derive(Default)]
struct Header {
    dimension: Option<usize>,
    capacity: Option<f64>,
    v_min: Option<f64>,
    v_max: Option<f64>,
    rent: Option<f64>,
}

enum Section {
    Header,
    Coordinates,
    Items,
}

/// Parses a TTP benchmark file (2017 competition layout).
///
/// Distances along the identity route are ceiled Euclidean distances
/// between consecutive node coordinates, with the last leg returning to
/// the first node.
pub fn parse_ttp(text: &str) -> Result<TtpInstance, ParseError> {
    let mut header = Header::default();
    let mut coords: Vec<Option<(f64, f64)>> = Vec::new();
    let mut raw_items: Vec<(usize, i64, u64, u64)> = Vec::new();
    let mut section = Section::Header;
    let mut saw_coords = false;
    let mut saw_items = false;

    for (line, tokens) in data_lines(text) {
        let joined = tokens.join(" ");
        let upper = joined.to_ascii_uppercase();
        if upper.starts_with("NODE_COORD_SECTION") {
            let n = header.dimension.ok_or_else(|| ParseError::MissingSection("DIMENSION".into()))?;
            coords = vec![None; n];
            section = Section::Coordinates;
            saw_coords = true;
            continue;
        }
        if upper.starts_with("ITEMS SECTION") || upper.starts_with("ITEMS_SECTION") {
            section = Section::Items;
            saw_items = true;
            continue;
        }
        match section {
            Section::Header => {
                let Some((key, value)) = joined.split_once(':') else {
                    return Err(ParseError::Malformed { line, reason: "expected `KEY: value`".into() });
                };
                let key = key.trim().to_ascii_uppercase();
                let value = value.trim();
                match key.as_str() {
                    "DIMENSION" => {
                        let n = parse_i64(value, line, "dimension")?;
                        if n < 1 {
                            return Err(ParseError::InvalidParameter(format!("dimension {n}")));
                        }
                        header.dimension = Some(n as usize);
                    }
                    "CAPACITY OF KNAPSACK" => header.capacity = Some(parse_f64(value, line, "capacity")?),
                    "MIN SPEED" => header.v_min = Some(parse_f64(value, line, "min speed")?),
                    "MAX SPEED" => header.v_max = Some(parse_f64(value, line, "max speed")?),
                    "RENTING RATIO" => header.rent = Some(parse_f64(value, line, "renting ratio")?),
                    _ => {}
                }
            }
            Section::Coordinates => {
                if tokens.len() < 3 {
                    return Err(ParseError::Malformed { line, reason: "expected `index x y`".into() });
                }
                let idx = parse_i64(tokens[0], line, "node index")?;
                if idx < 1 || idx as usize > coords.len() {
                    return Err(ParseError::NodeOutOfRange { line, id: idx, n: coords.len() });
                }
                let x = parse_f64(tokens[1], line, "x coordinate")?;
                let y = parse_f64(tokens[2], line, "y coordinate")?;
                coords[idx as usize - 1] = Some((x, y));
            }
            Section::Items => {
                if tokens.len() < 4 {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "expected `index profit weight node`".into(),
                    });
                }
                let profit = parse_positive_int(tokens[1], line, "profit")?;
                let weight = parse_positive_int(tokens[2], line, "weight")?;
                let city = parse_i64(tokens[3], line, "assigned node")?;
                raw_items.push((line, city, profit, weight));
            }
        }
    }

    let n = header.dimension.ok_or_else(|| ParseError::MissingSection("DIMENSION".into()))?;
    let capacity = header.capacity.ok_or_else(|| ParseError::MissingSection("CAPACITY OF KNAPSACK".into()))?;
    let v_min = header.v_min.ok_or_else(|| ParseError::MissingSection("MIN SPEED".into()))?;
    let v_max = header.v_max.ok_or_else(|| ParseError::MissingSection("MAX SPEED".into()))?;
    let rent = header.rent.ok_or_else(|| ParseError::MissingSection("RENTING RATIO".into()))?;
    if !saw_coords {
        return Err(ParseError::MissingSection("NODE_COORD_SECTION".into()));
    }
    if !saw_items {
        return Err(ParseError::MissingSection("ITEMS SECTION".into()));
    }
    let coords: Vec<(f64, f64)> = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| ParseError::MissingSection(format!("coordinates of node {}", i + 1))))
        .collect::<Result<_, _>>()?;

    let distances = (0..n)
        .map(|i| {
            let (ax, ay) = coords[i];
            let (bx, by) = coords[(i + 1) % n];
            ((ax - bx).hypot(ay - by)).ceil()
        })
        .collect();

    let items = raw_items
        .into_iter()
        .map(|(line, city, profit, weight)| {
            if city < 1 || city as usize > n {
                Err(ParseError::UnknownCity { line, city })
            } else {
                Ok(Item { city: city as usize - 1, profit, weight })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    TtpInstance::new(distances, items, v_min, v_max, capacity, rent)
}

fn parse_positive_int(token: &str, line: usize, what: &str) -> Result<u64, ParseError> {
    match token.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(ParseError::Malformed { line, reason: format!("expected positive integer {what}, found `{token}`") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CITIES: &str = "PROBLEM NAME: tiny\n\
        DIMENSION: 2\n\
        NUMBER OF ITEMS: 1\n\
        CAPACITY OF KNAPSACK: 3\n\
        MIN SPEED: 0.1\n\
        MAX SPEED: 1\n\
        RENTING RATIO: 1\n\
        EDGE_WEIGHT_TYPE: CEIL_2D\n\
        NODE_COORD_SECTION (INDEX, X, Y):\n\
        1 0 0\n\
        2 3 4\n\
        ITEMS SECTION (INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER):\n\
        1 10 3 2\n";

    #[test]
    fn two_city_instance() {
        let inst = parse_ttp(TWO_CITIES).unwrap();
        assert_eq!(inst.distances(), &[5.0, 5.0]);
        assert_eq!(inst.item_count(), 1);
        assert_eq!(inst.items()[0], Item { city: 1, profit: 10, weight: 3 });
        assert_eq!(inst.items_at(0), 0..0);
        assert_eq!(inst.items_at(1), 0..1);
        assert!((inst.nu() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn zero_items_rejected() {
        let text = TWO_CITIES.replace("1 10 3 2\n", "");
        assert_eq!(parse_ttp(&text), Err(ParseError::NoItems));
    }

    #[test]
    fn missing_capacity_rejected() {
        let text = TWO_CITIES.replace("CAPACITY OF KNAPSACK: 3\n", "");
        assert_eq!(parse_ttp(&text), Err(ParseError::MissingSection("CAPACITY OF KNAPSACK".into())));
    }

    #[test]
    fn unknown_city_rejected() {
        let text = TWO_CITIES.replace("1 10 3 2\n", "1 10 3 5\n");
        assert!(matches!(parse_ttp(&text), Err(ParseError::UnknownCity { city: 5, .. })));
    }

    #[test]
    fn missing_item_section_rejected() {
        let cut = TWO_CITIES.find("ITEMS SECTION").unwrap();
        assert_eq!(
            parse_ttp(&TWO_CITIES[..cut]),
            Err(ParseError::MissingSection("ITEMS SECTION".into()))
        );
    }

    #[test]
    fn items_grouped_by_city_in_file_order() {
        let inst = TtpInstance::new(
            vec![1.0, 1.0, 1.0],
            vec![
                Item { city: 2, profit: 1, weight: 1 },
                Item { city: 0, profit: 2, weight: 1 },
                Item { city: 2, profit: 3, weight: 1 },
            ],
            0.1,
            1.0,
            5.0,
            1.0,
        )
        .unwrap();
        let profits: Vec<u64> = inst.items().iter().map(|i| i.profit).collect();
        assert_eq!(profits, vec![2, 1, 3]);
        assert_eq!(inst.items_at(1), 1..1);
        assert_eq!(inst.items_at(2), 1..3);
    }
}
