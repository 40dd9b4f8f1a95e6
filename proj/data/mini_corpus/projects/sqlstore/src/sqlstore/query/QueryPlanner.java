package sqlstore.query;

import java.util.ArrayList;
import java.util.List;

public class QueryPlanner {
    private final List<String> steps = new ArrayList<>();

    public void plan(String query) {
        steps.add(query);
    }

    public List<String> steps() {
        return steps;
    }
}
