package learnlib.model;

public class LinearModel {
    private double slope;
    private double intercept;

    public double predict(double feature) {
        return slope * feature + intercept;
    }

    public void setCoefficients(double slope, double intercept) {
        this.slope = slope;
        this.intercept = intercept;
    }
}
