// Teacher dashboard: one row per student, per-pattern error columns shaded by
// how often the class stumbles on each pattern.

import type { ClassReport } from "./types";

export function renderClassReport(root: HTMLElement, report: ClassReport): void {
  root.innerHTML = "";
  const panel = document.createElement("div");
  panel.className = "dashboard";

  const heading = document.createElement("h2");
  heading.textContent = "Class progress";
  panel.append(heading);

  const patterns = Object.keys(report.totals.per_pattern).sort();
  const maxIncorrect = Math.max(
    1, ...patterns.map((p) => report.totals.per_pattern[p].incorrect),
  );

  const table = document.createElement("table");
  table.className = "class-report";
  const head = table.createTHead().insertRow();
  for (const label of ["Student", "Games", "Finished", ...patterns.map((p) => `${p} ✗`)]) {
    const cell = document.createElement("th");
    cell.textContent = label;
    head.append(cell);
  }

  const body = table.createTBody();
  for (const student of report.students) {
    const row = body.insertRow();
    row.dataset.studentId = student.student_id;
    row.insertCell().textContent = student.student_name;
    row.insertCell().textContent = String(student.games);
    row.insertCell().textContent = String(student.finished_games);
    for (const pattern of patterns) {
      const cell = row.insertCell();
      cell.className = "heat";
      const incorrect = student.per_pattern[pattern]?.incorrect ?? 0;
      cell.textContent = String(incorrect);
      const intensity = incorrect / maxIncorrect;
      cell.style.backgroundColor = `rgba(200, 64, 48, ${(0.85 * intensity).toFixed(3)})`;
    }
  }

  const totalsRow = body.insertRow();
  totalsRow.className = "totals";
  totalsRow.insertCell().textContent = "Class totals";
  totalsRow.insertCell().textContent = String(
    report.students.reduce((n, s) => n + s.games, 0),
  );
  totalsRow.insertCell().textContent = String(
    report.students.reduce((n, s) => n + s.finished_games, 0),
  );
  for (const pattern of patterns) {
    totalsRow.insertCell().textContent = String(report.totals.per_pattern[pattern].incorrect);
  }

  panel.append(table);
  if (report.students.length === 0) {
    const empty = document.createElement("p");
    empty.textContent = "No students registered yet.";
    panel.append(empty);
  }
  root.append(panel);
}

export function renderAccessDenied(root: HTMLElement): void {
  root.innerHTML = "";
  const message = document.createElement("p");
  message.className = "access-denied";
  message.textContent = "The dashboard is only available to teachers.";
  root.append(message);
}
