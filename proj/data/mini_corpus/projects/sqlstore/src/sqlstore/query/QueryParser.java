package sqlstore.query;

public class QueryParser {
    public QueryPlanner parse(String sql) {
        String trimmed = sql.trim();
        QueryPlanner planner = new QueryPlanner();
        planner.plan(trimmed);
        return planner;
    }

    public boolean isSelect(String sql) {
        return sql.regionMatches(true, 0, "SELECT", 0, 6);
    }
}
