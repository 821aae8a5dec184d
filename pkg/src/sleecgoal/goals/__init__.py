"""Goal-model language: functional, normative and adaptation goals, tasks, refinements."""

from sleecgoal.goals.model import Goal, GoalModel, NormativeAttrs, Refinement, Task
from sleecgoal.goals.parser import parse_goal_model
from sleecgoal.goals.printer import print_goal_model
from sleecgoal.goals.validate import ValidationError, assign_task_indices, validate_goal_model

__all__ = [
    "Goal", "GoalModel", "NormativeAttrs", "Refinement", "Task", "ValidationError",
    "assign_task_indices", "parse_goal_model", "print_goal_model", "validate_goal_model",
]
