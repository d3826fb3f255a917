//! Problem-instance types and the pure functions over them: travel time,
//! reachability and structural validation.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::coalition::Coalition;
use crate::value::ValueModel;

/// Discrete simulation time. One tick is the base time unit of the model.
pub type Tick = u32;

/// Index of a task within its instance.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TaskId(pub u32);

/// Index of an agent within its instance.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AgentId(pub u32);

/// Index of a location within its instance.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocationId(pub u32);

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// A latitude/longitude pair. Under the euclidean metric the two fields are
/// read as plane coordinates in distance units.
#[derive(Clone, Copy, PartialEq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

/// A task: a fixed location, a deadline (last tick agents may work on it)
/// and a workload (amount of work required to complete it).
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Task {
    pub location: LocationId,
    pub deadline: Tick,
    pub workload: f64,
}

/// An agent: an initial location and a travel speed in distance units per
/// tick.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Agent {
    pub initial_location: LocationId,
    pub speed: f64,
}

/// Distance metric between locations. Travel times are always rounded up,
/// so an agent never arrives earlier than physically possible.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TravelMetric {
    /// Plane distance over the raw coordinate pair.
    Euclidean,
    /// Great-circle distance in metres, Earth radius 6 371 000 m.
    Haversine,
}

/// Whether an agent arriving at tick `s` contributes work from tick `s`
/// itself or only from `s + 1`. The inclusive rule is the default and is
/// applied uniformly to the validator, the exact solver and both
/// schedulers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ArrivalRule {
    #[default]
    WorkOnArrivalTick,
    WorkAfterArrivalTick,
}

/// Structural errors raised when ids do not resolve or construction
/// invariants are broken.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModelError {
    UnknownLocation(LocationId),
    UnknownTask(TaskId),
    UnknownAgent(AgentId),
    BadCoordinate { location: u32, detail: &'static str },
    BadSpeed(AgentId),
    BadWorkload(TaskId),
    TooManyAgents { agents: usize, max: usize },
    Invalid(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::UnknownLocation(l) => write!(f, "unresolved location ref l{}", l.0),
            ModelError::UnknownTask(v) => write!(f, "unresolved task ref {v}"),
            ModelError::UnknownAgent(a) => write!(f, "unresolved agent ref {a}"),
            ModelError::BadCoordinate { location, detail } => {
                write!(f, "location l{location}: {detail}")
            }
            ModelError::BadSpeed(a) => write!(f, "agent {a}: speed must be positive and finite"),
            ModelError::BadWorkload(v) => {
                write!(f, "task {v}: workload must be non-negative and finite")
            }
            ModelError::TooManyAgents { agents, max } => {
                write!(f, "{agents} agents exceed the supported maximum of {max}")
            }
            ModelError::Invalid(s) => f.write_str(s),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModelError {}

/// An immutable CFSTP problem.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Instance {
    pub tasks: Vec<Task>,
    pub agents: Vec<Agent>,
    pub locations: Vec<GeoPoint>,
    pub travel: TravelMetric,
    pub values: ValueModel,
    #[cfg_attr(feature = "serde", serde(default))]
    pub arrival_rule: ArrivalRule,
}

impl Instance {
    /// Builds an instance, checking every construction invariant.
    pub fn new(
        tasks: Vec<Task>,
        agents: Vec<Agent>,
        locations: Vec<GeoPoint>,
        travel: TravelMetric,
        values: ValueModel,
    ) -> Result<Self, ModelError> {
        let inst = Instance { tasks, agents, locations, travel, values, arrival_rule: ArrivalRule::default() };
        inst.check()?;
        Ok(inst)
    }

    /// Re-validates all structural invariants; used after deserialization.
    pub fn check(&self) -> Result<(), ModelError> {
        if self.agents.len() > Coalition::MAX_AGENTS {
            return Err(ModelError::TooManyAgents {
                agents: self.agents.len(),
                max: Coalition::MAX_AGENTS,
            });
        }
        for (i, p) in self.locations.iter().enumerate() {
            let i = i as u32;
            if !p.lat.is_finite() || !(-90.0..=90.0).contains(&p.lat) {
                return Err(ModelError::BadCoordinate { location: i, detail: "lat out of [-90, 90]" });
            }
            if !p.lon.is_finite() || !(-180.0..=180.0).contains(&p.lon) {
                return Err(ModelError::BadCoordinate { location: i, detail: "lon out of [-180, 180]" });
            }
        }
        for (i, t) in self.tasks.iter().enumerate() {
            if t.location.0 as usize >= self.locations.len() {
                return Err(ModelError::UnknownLocation(t.location));
            }
            if !t.workload.is_finite() || t.workload < 0.0 {
                return Err(ModelError::BadWorkload(TaskId(i as u32)));
            }
        }
        for (i, a) in self.agents.iter().enumerate() {
            if a.initial_location.0 as usize >= self.locations.len() {
                return Err(ModelError::UnknownLocation(a.initial_location));
            }
            if !a.speed.is_finite() || a.speed <= 0.0 {
                return Err(ModelError::BadSpeed(AgentId(i as u32)));
            }
        }
        Ok(())
    }

    /// The maximum problem time: the largest task deadline, 0 with no tasks.
    pub fn t_max(&self) -> Tick {
        self.tasks.iter().map(|t| t.deadline).max().unwrap_or(0)
    }

    pub fn task(&self, v: TaskId) -> &Task {
        &self.tasks[v.0 as usize]
    }

    pub fn agent(&self, a: AgentId) -> &Agent {
        &self.agents[a.0 as usize]
    }

    pub fn point(&self, l: LocationId) -> GeoPoint {
        self.locations[l.0 as usize]
    }

    /// Distance between two locations under the instance metric.
    pub fn distance(&self, from: LocationId, to: LocationId) -> f64 {
        distance(self.travel, self.point(from), self.point(to))
    }

    /// Travel time in whole ticks: `ceil(distance / speed)`.
    ///
    /// Checked variant; unresolved refs are reported as structural errors.
    pub fn travel_time(
        &self,
        agent: AgentId,
        from: LocationId,
        to: LocationId,
    ) -> Result<Tick, ModelError> {
        let a = self.agents.get(agent.0 as usize).ok_or(ModelError::UnknownAgent(agent))?;
        if from.0 as usize >= self.locations.len() {
            return Err(ModelError::UnknownLocation(from));
        }
        if to.0 as usize >= self.locations.len() {
            return Err(ModelError::UnknownLocation(to));
        }
        Ok(travel_ticks(self.distance(from, to), a.speed))
    }

    /// True iff the agent, departing `from` at tick `at`, can reach the
    /// task location by its deadline: `at + travel <= deadline`.
    pub fn reachable(&self, agent: AgentId, from: LocationId, at: Tick, v: TaskId) -> bool {
        let task = self.task(v);
        let travel = travel_ticks(self.distance(from, task.location), self.agent(agent).speed);
        (at as u64) + (travel as u64) <= task.deadline as u64
    }
}

const EARTH_RADIUS_M: f64 = 6_371_000.0;

fn deg2rad(d: f64) -> f64 {
    d * core::f64::consts::PI / 180.0
}

/// Distance between two points under the given metric.
pub fn distance(metric: TravelMetric, a: GeoPoint, b: GeoPoint) -> f64 {
    match metric {
        TravelMetric::Euclidean => {
            let dx = a.lat - b.lat;
            let dy = a.lon - b.lon;
            libm::sqrt(dx * dx + dy * dy)
        }
        TravelMetric::Haversine => {
            let p1 = deg2rad(a.lat);
            let p2 = deg2rad(b.lat);
            let dp = deg2rad(b.lat - a.lat);
            let dl = deg2rad(b.lon - a.lon);
            let sp = libm::sin(dp / 2.0);
            let sl = libm::sin(dl / 2.0);
            let h = sp * sp + libm::cos(p1) * libm::cos(p2) * sl * sl;
            2.0 * EARTH_RADIUS_M * libm::atan2(libm::sqrt(h), libm::sqrt(1.0 - h))
        }
    }
}

/// Whole-tick travel time for a distance at a speed, rounded up and
/// saturating at `Tick::MAX` for degenerate inputs.
pub fn travel_ticks(dist: f64, speed: f64) -> Tick {
    let t = libm::ceil(dist / speed);
    if t >= Tick::MAX as f64 {
        Tick::MAX
    } else if t <= 0.0 {
        0
    } else {
        t as Tick
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::ValueModel;
    use alloc::vec;

    fn planar_instance() -> Instance {
        Instance::new(
            vec![Task { location: LocationId(1), deadline: 4, workload: 1.0 }],
            vec![Agent { initial_location: LocationId(0), speed: 2.0 }],
            vec![GeoPoint { lat: 0.0, lon: 0.0 }, GeoPoint { lat: 0.0, lon: 3.0 }],
            TravelMetric::Euclidean,
            ValueModel::ndcs(1),
        )
        .unwrap()
    }

    #[test]
    fn zero_distance_identity() {
        let inst = planar_instance();
        assert_eq!(inst.travel_time(AgentId(0), LocationId(1), LocationId(1)).unwrap(), 0);
    }

    #[test]
    fn euclidean_ceil_rule() {
        // speed 2.0, (0,0) -> (0,3): ceil(3/2) = 2
        let inst = planar_instance();
        assert_eq!(inst.travel_time(AgentId(0), LocationId(0), LocationId(1)).unwrap(), 2);
    }

    #[test]
    fn haversine_pinned_london_pair() {
        // (51.5074,-0.1278) -> (51.5155,-0.0922) at 1 m/tick; the great-circle
        // distance is 2623.107... m, pinned against an independent reference.
        let inst = Instance::new(
            vec![Task { location: LocationId(1), deadline: 10_000, workload: 1.0 }],
            vec![Agent { initial_location: LocationId(0), speed: 1.0 }],
            vec![
                GeoPoint { lat: 51.5074, lon: -0.1278 },
                GeoPoint { lat: 51.5155, lon: -0.0922 },
            ],
            TravelMetric::Haversine,
            ValueModel::ndcs(1),
        )
        .unwrap();
        assert_eq!(inst.travel_time(AgentId(0), LocationId(0), LocationId(1)).unwrap(), 2624);
        let d = inst.distance(LocationId(0), LocationId(1));
        assert!((d - 2623.107_491_544_754).abs() < 1e-6, "distance {d}");
    }

    #[test]
    fn reachable_boundaries() {
        let inst = planar_instance();
        // Agent standing at the task location: boundary inclusive.
        assert!(inst.reachable(AgentId(0), LocationId(1), 4, TaskId(0)));
        assert!(!inst.reachable(AgentId(0), LocationId(1), 5, TaskId(0)));
        // speed 2, distance 3 -> 2 ticks; 3 + 2 > 4.
        assert!(inst.reachable(AgentId(0), LocationId(0), 2, TaskId(0)));
        assert!(!inst.reachable(AgentId(0), LocationId(0), 3, TaskId(0)));
    }

    #[test]
    fn unreachable_speed_distance_deadline() {
        // speed 1, distance 5, departing at 0 with deadline 4: 0 + 5 > 4.
        let inst = Instance::new(
            vec![Task { location: LocationId(1), deadline: 4, workload: 1.0 }],
            vec![Agent { initial_location: LocationId(0), speed: 1.0 }],
            vec![GeoPoint { lat: 0.0, lon: 0.0 }, GeoPoint { lat: 0.0, lon: 5.0 }],
            TravelMetric::Euclidean,
            ValueModel::ndcs(1),
        )
        .unwrap();
        assert!(!inst.reachable(AgentId(0), LocationId(0), 0, TaskId(0)));
    }

    #[test]
    fn structural_errors() {
        let inst = planar_instance();
        assert!(matches!(
            inst.travel_time(AgentId(0), LocationId(9), LocationId(1)),
            Err(ModelError::UnknownLocation(LocationId(9)))
        ));
        assert!(matches!(
            inst.travel_time(AgentId(3), LocationId(0), LocationId(1)),
            Err(ModelError::UnknownAgent(AgentId(3)))
        ));
        let bad = Instance::new(
            vec![],
            vec![Agent { initial_location: LocationId(0), speed: 0.0 }],
            vec![GeoPoint { lat: 0.0, lon: 0.0 }],
            TravelMetric::Euclidean,
            ValueModel::ndcs(1),
        );
        assert!(matches!(bad, Err(ModelError::BadSpeed(_))));
        let bad = Instance::new(
            vec![],
            vec![],
            vec![GeoPoint { lat: 91.0, lon: 0.0 }],
            TravelMetric::Euclidean,
            ValueModel::ndcs(1),
        );
        assert!(matches!(bad, Err(ModelError::BadCoordinate { .. })));
    }

    #[test]
    fn t_max_is_largest_deadline() {
        let inst = planar_instance();
        assert_eq!(inst.t_max(), 4);
    }
}
